use std::borrow::Cow;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::SeriesError;

/// Truncated Puiseux series `sum c_i q^((lo + i)/ram) + O(q^(trunc/ram))`.
///
/// Coefficients are stored densely from `lo` up to (but excluding) `trunc`.
/// The representation is normalized so that the first stored coefficient is
/// nonzero; the zero series has `lo == trunc` and no stored coefficients.
#[derive(Clone, Debug)]
pub struct PuiseuxSeries {
    ram: i64,
    lo: i64,
    trunc: i64,
    coeffs: Vec<BigRational>,
}

fn lcm(a: i64, b: i64) -> i64 {
    a.lcm(&b)
}

impl PuiseuxSeries {
    /// Builds a series from raw parts; `coeffs.len()` must equal `trunc - lo`.
    pub fn from_parts(ram: u32, lo: i64, trunc: i64, coeffs: Vec<BigRational>) -> Result<Self, SeriesError> {
        if ram == 0 {
            return Err(SeriesError::Invalid("ramification must be positive".into()));
        }
        if trunc < lo || (trunc - lo) as usize != coeffs.len() {
            return Err(SeriesError::Invalid(format!(
                "expected trunc - lo = {} coefficients, got {}",
                trunc - lo,
                coeffs.len()
            )));
        }
        Ok(Self::raw(ram as i64, lo, trunc, coeffs))
    }

    fn raw(ram: i64, lo: i64, trunc: i64, coeffs: Vec<BigRational>) -> Self {
        debug_assert_eq!(coeffs.len() as i64, trunc - lo);
        let mut s = PuiseuxSeries { ram, lo, trunc, coeffs };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(0) => {}
            Some(k) => {
                self.coeffs.drain(..k);
                self.lo += k as i64;
            }
            None => {
                self.coeffs.clear();
                self.lo = self.trunc;
            }
        }
    }

    /// The zero series known modulo `q^order`.
    pub fn zero(order: Rational64) -> Self {
        let ram = *order.denom();
        let t = *order.numer();
        PuiseuxSeries { ram, lo: t, trunc: t, coeffs: Vec::new() }
    }

    pub fn one(order: Rational64) -> Self {
        Self::constant(BigRational::one(), order)
    }

    pub fn constant(c: BigRational, order: Rational64) -> Self {
        Self::monomial(c, Rational64::zero(), order)
    }

    /// `c q^exp + O(q^order)`.
    pub fn monomial(c: BigRational, exp: Rational64, order: Rational64) -> Self {
        let ram = lcm(*exp.denom(), *order.denom());
        let lo = exp.numer() * (ram / exp.denom());
        let trunc = order.numer() * (ram / order.denom());
        if lo >= trunc {
            return PuiseuxSeries { ram, lo: trunc, trunc, coeffs: Vec::new() };
        }
        let mut coeffs = vec![BigRational::zero(); (trunc - lo) as usize];
        coeffs[0] = c;
        Self::raw(ram, lo, trunc, coeffs)
    }

    /// Finite sum of `(exponent, coefficient)` terms, known modulo `q^order`.
    /// Terms at or above `order` are dropped.
    pub fn from_terms(terms: &[(Rational64, BigRational)], order: Rational64) -> Self {
        let mut ram = *order.denom();
        for (e, _) in terms {
            ram = lcm(ram, *e.denom());
        }
        let trunc = order.numer() * (ram / order.denom());
        let idx = |e: &Rational64| e.numer() * (ram / e.denom());
        let lo = terms.iter().map(|(e, _)| idx(e)).min().unwrap_or(trunc).min(trunc);
        let mut coeffs = vec![BigRational::zero(); (trunc - lo) as usize];
        for (e, c) in terms {
            let k = idx(e);
            if k < trunc {
                coeffs[(k - lo) as usize] += c;
            }
        }
        Self::raw(ram, lo, trunc, coeffs)
    }

    /// Integer-coefficient series `sum coeffs[i] q^((lo + i)/ram)` known mod `q^(trunc/ram)`.
    pub fn from_int_coeffs(ram: u32, lo: i64, coeffs: &[i64], trunc: i64) -> Self {
        let ram = ram as i64;
        let mut v = vec![BigRational::zero(); (trunc - lo).max(0) as usize];
        for (i, c) in coeffs.iter().enumerate() {
            if (i as i64) < trunc - lo {
                v[i] = BigRational::from_integer((*c).into());
            }
        }
        Self::raw(ram, lo, trunc.max(lo), v)
    }

    pub fn ram(&self) -> u32 {
        self.ram as u32
    }

    /// Index of the first stored coefficient, in units of `1/ram`.
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Truncation index, in units of `1/ram`.
    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// The series is known modulo `q^order()`.
    pub fn order(&self) -> Rational64 {
        Rational64::new(self.trunc, self.ram)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exponent of the lowest nonzero term, if any term is known to be nonzero.
    pub fn valuation(&self) -> Option<Rational64> {
        (!self.coeffs.is_empty()).then(|| Rational64::new(self.lo, self.ram))
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.coeffs.first()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Rational64, &BigRational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (Rational64::new(self.lo + i as i64, self.ram), c))
    }

    /// Exact coefficient of `q^e`.
    pub fn coeff(&self, e: Rational64) -> Result<BigRational, SeriesError> {
        if e >= self.order() {
            return Err(SeriesError::OrderExceeded { exponent: e, order: self.order() });
        }
        let scaled = e * Rational64::from_integer(self.ram);
        if !scaled.is_integer() {
            return Ok(BigRational::zero());
        }
        let k = scaled.to_integer() - self.lo;
        if k < 0 {
            return Ok(BigRational::zero());
        }
        Ok(self.coeffs[k as usize].clone())
    }

    fn get(&self, k: i64) -> Option<&BigRational> {
        if k < self.lo || k >= self.trunc {
            None
        } else {
            Some(&self.coeffs[(k - self.lo) as usize])
        }
    }

    fn rescaled(&self, factor: i64) -> Self {
        if factor == 1 {
            return self.clone();
        }
        let len = if self.coeffs.is_empty() { 0 } else { (self.trunc - self.lo) * factor };
        let mut coeffs = vec![BigRational::zero(); len as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * factor as usize] = c.clone();
        }
        PuiseuxSeries { ram: self.ram * factor, lo: self.lo * factor, trunc: self.trunc * factor, coeffs }
    }

    /// Same series written over ramification `ram`, which must be a multiple of `self.ram()`.
    pub fn with_ram(&self, ram: u32) -> Self {
        let ram = ram as i64;
        assert!(ram % self.ram == 0, "ramification {ram} is not a multiple of {}", self.ram);
        self.rescaled(ram / self.ram)
    }

    fn common<'a>(a: &'a Self, b: &'a Self) -> (Cow<'a, Self>, Cow<'a, Self>) {
        if a.ram == b.ram {
            return (Cow::Borrowed(a), Cow::Borrowed(b));
        }
        let r = lcm(a.ram, b.ram);
        (Cow::Owned(a.rescaled(r / a.ram)), Cow::Owned(b.rescaled(r / b.ram)))
    }

    pub fn neg(&self) -> Self {
        PuiseuxSeries { coeffs: self.coeffs.iter().map(|c| -c).collect(), ..self.clone() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return PuiseuxSeries { lo: self.trunc, coeffs: Vec::new(), ..*self };
        }
        PuiseuxSeries { coeffs: self.coeffs.iter().map(|x| x * c).collect(), ..self.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = Self::common(self, other);
        let trunc = a.trunc.min(b.trunc);
        let lo = a.lo.min(b.lo).min(trunc);
        let coeffs = (lo..trunc)
            .map(|k| match (a.get(k), b.get(k)) {
                (Some(x), Some(y)) => x + y,
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (None, None) => BigRational::zero(),
            })
            .collect();
        Self::raw(a.ram, lo, trunc, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Cauchy product, known up to `min(a.trunc + b.lo, b.trunc + a.lo)`.
    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = Self::common(self, other);
        let trunc = (a.trunc + b.lo).min(b.trunc + a.lo);
        let lo = a.lo + b.lo;
        if lo >= trunc {
            return PuiseuxSeries { ram: a.ram, lo: trunc, trunc, coeffs: Vec::new() };
        }
        let n = (trunc - lo) as usize;
        let mut out = vec![BigRational::zero(); n];
        for (i, x) in a.coeffs.iter().enumerate().take(n) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate().take(n - i) {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        Self::raw(a.ram, lo, trunc, out)
    }

    /// Multiplicative inverse; the relative precision `trunc - lo` is preserved.
    pub fn inv(&self) -> Result<Self, SeriesError> {
        let c0 = self.coeffs.first().ok_or(SeriesError::ZeroLeadingCoefficient)?;
        let n = self.coeffs.len();
        let c0_inv = c0.recip();
        let mut out: Vec<BigRational> = Vec::with_capacity(n);
        out.push(c0_inv.clone());
        for k in 1..n {
            let mut acc = BigRational::zero();
            for i in 1..=k {
                let c = &self.coeffs[i];
                if !c.is_zero() && !out[k - i].is_zero() {
                    acc += c * &out[k - i];
                }
            }
            out.push(-(acc * &c0_inv));
        }
        Ok(Self::raw(self.ram, -self.lo, -self.lo + n as i64, out))
    }

    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        Ok(self.mul(&other.inv()?))
    }

    /// Integer power by repeated squaring; negative powers go through [`inv`](Self::inv).
    pub fn pow(&self, n: i64) -> Result<Self, SeriesError> {
        if n < 0 {
            return self.inv()?.pow(-n);
        }
        // a^0 = 1 exactly; report it with the relative precision of a
        let mut acc = Self::one(Rational64::new(self.trunc - self.lo, self.ram));
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = PuiseuxSeries::mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = PuiseuxSeries::mul(&base, &base);
            }
        }
        Ok(acc)
    }

    /// Substitutes `q -> q^r` for a positive rational `r` (so `tau -> r tau`).
    pub fn subst_qpow(&self, r: Rational64) -> Self {
        assert!(r > Rational64::zero(), "substitution exponent must be positive");
        let p = *r.numer();
        let s = *r.denom();
        let ram = self.ram * s;
        let g = p.gcd(&ram);
        let stride = p / g;
        let ram = ram / g;
        let mut coeffs = vec![BigRational::zero(); ((self.trunc - self.lo) * stride) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * stride as usize] = c.clone();
        }
        PuiseuxSeries { ram, lo: self.lo * stride, trunc: self.trunc * stride, coeffs }
    }

    /// Multiplies by `q^shift`.
    pub fn shift(&self, shift: Rational64) -> Self {
        let r = lcm(self.ram, *shift.denom());
        let mut s = self.rescaled(r / self.ram);
        let k = shift.numer() * (r / shift.denom());
        s.lo += k;
        s.trunc += k;
        s
    }

    /// Forgets everything at or above `q^order`.
    pub fn truncate(&self, order: Rational64) -> Self {
        if order >= self.order() {
            return self.clone();
        }
        let r = lcm(self.ram, *order.denom());
        let s = self.rescaled(r / self.ram);
        let trunc = order.numer() * (r / order.denom());
        let lo = s.lo.min(trunc);
        let coeffs = (lo..trunc).map(|k| s.get(k).cloned().unwrap_or_default()).collect();
        Self::raw(r, lo, trunc, coeffs)
    }

    /// Lowest exponent carrying a nonzero coefficient (alias of [`valuation`](Self::valuation)).
    pub fn first_nonzero_exponent(&self) -> Option<Rational64> {
        self.valuation()
    }

    /// Whether the two series agree on the window where both are known.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let order = self.order().min(other.order());
        self.truncate(order) == other.truncate(order)
    }

    /// Numerical value of the known part at `tau`, with `q^e = exp(2 pi i tau e)`.
    pub fn eval_at_tau(&self, tau: Complex64) -> Complex64 {
        let two_pi_i_tau = Complex64::new(0.0, 2.0 * std::f64::consts::PI) * tau;
        let mut sum = Complex64::zero();
        for (e, c) in self.terms() {
            let e = *e.numer() as f64 / *e.denom() as f64;
            let c = c.to_f64().unwrap_or(f64::NAN);
            sum += (two_pi_i_tau * e).exp() * c;
        }
        sum
    }

    /// Ramification reduced as far as the stored window allows.
    ///
    /// The stored exponents and the truncation point must all lie in the coarser
    /// lattice; the unknown tail is assumed to follow the same lattice.
    pub fn simplify_ram(&self) -> Self {
        let mut g = self.ram.gcd(&self.trunc);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                g = g.gcd(&(self.lo + i as i64));
            }
        }
        if g <= 1 {
            return self.clone();
        }
        let lo = self.lo / g;
        let trunc = self.trunc / g;
        let coeffs = (lo..trunc).map(|k| self.get(k * g).cloned().unwrap_or_default()).collect();
        Self::raw(self.ram / g, lo, trunc, coeffs)
    }
}

impl PartialEq for PuiseuxSeries {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Self::common(self, other);
        a.lo == b.lo && a.trunc == b.trunc && a.coeffs == b.coeffs
    }
}

impl Eq for PuiseuxSeries {}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl<'a> $tr<&'a PuiseuxSeries> for &'a PuiseuxSeries {
            type Output = PuiseuxSeries;
            fn $m(self, rhs: &'a PuiseuxSeries) -> PuiseuxSeries {
                PuiseuxSeries::$m(self, rhs)
            }
        }
        impl $tr for PuiseuxSeries {
            type Output = PuiseuxSeries;
            fn $m(self, rhs: PuiseuxSeries) -> PuiseuxSeries {
                PuiseuxSeries::$m(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &PuiseuxSeries {
    type Output = PuiseuxSeries;
    fn neg(self) -> PuiseuxSeries {
        PuiseuxSeries::neg(self)
    }
}

impl Neg for PuiseuxSeries {
    type Output = PuiseuxSeries;
    fn neg(self) -> PuiseuxSeries {
        PuiseuxSeries::neg(&self)
    }
}

pub(crate) fn fmt_exponent(e: Rational64) -> String {
    if e.is_integer() {
        e.to_integer().to_string()
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let is_one = mag.is_one();
            if e.is_zero() {
                write!(f, "{mag}")?;
                continue;
            }
            if !is_one {
                write!(f, "{mag}*")?;
            }
            if e.is_one() {
                write!(f, "q")?;
            } else {
                write!(f, "q^({})", fmt_exponent(e))?;
            }
        }
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "O(q^({}))", fmt_exponent(self.order()))
    }
}
