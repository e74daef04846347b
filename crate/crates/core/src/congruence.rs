//! Finite computations in `SL_2(Z/N)`: group enumeration, images of congruence
//! subgroups, indices, normality, quotient shapes and genus via coset actions.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;
use thiserror::Error;

pub const MAX_MODULUS: u32 = 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CongruenceError {
    #[error("modulus {0} outside 1..={MAX_MODULUS}")]
    ModulusOutOfRange(u32),
    #[error("{name} is defined mod {level}, which does not divide {modulus}")]
    LevelMismatch { name: String, level: u32, modulus: u32 },
    #[error("the residues selected by {0} are not closed under multiplication and inverse")]
    NotAGroup(String),
    #[error("{inner} is not contained in {outer}")]
    NotContained { inner: String, outer: String },
    #[error("unknown group `{0}`")]
    UnknownGroup(String),
}

/// `[[a, b], [c, d]]` with entries in `Z/N` and determinant 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ModMatrix {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
    pub n: u32,
}

impl ModMatrix {
    /// Reduces the entries; `None` unless `ad - bc = 1 mod n`.
    pub fn new(a: i64, b: i64, c: i64, d: i64, n: u32) -> Option<Self> {
        let m = n as i64;
        let r = |x: i64| x.rem_euclid(m) as u32;
        let det = (a * d - b * c).rem_euclid(m);
        (det == 1 % m).then(|| ModMatrix { a: r(a), b: r(b), c: r(c), d: r(d), n })
    }

    pub fn identity(n: u32) -> Self {
        ModMatrix { a: 1 % n, b: 0, c: 0, d: 1 % n, n }
    }

    pub fn s(n: u32) -> Self {
        ModMatrix::new(0, -1, 1, 0, n).unwrap()
    }

    pub fn t(n: u32) -> Self {
        ModMatrix::new(1, 1, 0, 1, n).unwrap()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.n;
        let f = |x: u32, y: u32, z: u32, w: u32| (x * y + z * w) % n;
        ModMatrix {
            a: f(self.a, o.a, self.b, o.c),
            b: f(self.a, o.b, self.b, o.d),
            c: f(self.c, o.a, self.d, o.c),
            d: f(self.c, o.b, self.d, o.d),
            n,
        }
    }

    pub fn inverse(&self) -> Self {
        let n = self.n;
        ModMatrix { a: self.d, b: (n - self.b) % n, c: (n - self.c) % n, d: self.a, n }
    }

    pub fn neg(&self) -> Self {
        let n = self.n;
        let m = |x: u32| (n - x) % n;
        ModMatrix { a: m(self.a), b: m(self.b), c: m(self.c), d: m(self.d), n }
    }

    /// Image mod a divisor `m` of `n`.
    pub fn reduce(&self, m: u32) -> Self {
        ModMatrix { a: self.a % m, b: self.b % m, c: self.c % m, d: self.d % m, n: m }
    }

    fn code(&self) -> usize {
        let n = self.n as usize;
        ((self.a as usize * n + self.b as usize) * n + self.c as usize) * n + self.d as usize
    }

    /// Multiplicative order.
    pub fn order(&self) -> usize {
        let id = ModMatrix::identity(self.n);
        let mut x = *self;
        let mut k = 1;
        while x != id {
            x = x.mul(self);
            k += 1;
        }
        k
    }
}

impl fmt::Display for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{};{},{}) mod {}", self.a, self.b, self.c, self.d, self.n)
    }
}

fn check_modulus(n: u32) -> Result<(), CongruenceError> {
    if (1..=MAX_MODULUS).contains(&n) {
        Ok(())
    } else {
        Err(CongruenceError::ModulusOutOfRange(n))
    }
}

/// All of `SL_2(Z/N)` by filtering `(Z/N)^4`, sorted.
pub fn enumerate_group(n: u32) -> Result<Vec<ModMatrix>, CongruenceError> {
    check_modulus(n)?;
    let n64 = n as i64;
    let mut out = Vec::new();
    for a in 0..n64 {
        for b in 0..n64 {
            for c in 0..n64 {
                for d in 0..n64 {
                    if let Some(m) = ModMatrix::new(a, b, c, d, n) {
                        out.push(m);
                    }
                }
            }
        }
    }
    Ok(out)
}

fn prime_power_split(mut n: u32) -> Vec<u32> {
    let mut parts = Vec::new();
    let mut p = 2;
    while n > 1 {
        let mut q = 1;
        while n.is_multiple_of(p) {
            n /= p;
            q *= p;
        }
        if q > 1 {
            parts.push(q);
        }
        p += 1;
    }
    parts
}

fn crt_pair(r1: u32, m1: u32, r2: u32, m2: u32) -> u32 {
    (0..m1 * m2).find(|x| x % m1 == r1 && x % m2 == r2).expect("coprime moduli")
}

/// `SL_2(Z/N)` assembled from its prime-power components by the Chinese
/// remainder theorem, sorted.
pub fn enumerate_group_crt(n: u32) -> Result<Vec<ModMatrix>, CongruenceError> {
    check_modulus(n)?;
    let mut acc = vec![ModMatrix::identity(1)];
    for q in prime_power_split(n) {
        let part = enumerate_group(q)?;
        let m = acc[0].n;
        let mut next = Vec::with_capacity(acc.len() * part.len());
        for x in &acc {
            for y in &part {
                next.push(ModMatrix {
                    a: crt_pair(x.a, m, y.a, q),
                    b: crt_pair(x.b, m, y.b, q),
                    c: crt_pair(x.c, m, y.c, q),
                    d: crt_pair(x.d, m, y.d, q),
                    n: m * q,
                });
            }
        }
        acc = next;
    }
    acc.sort();
    Ok(acc)
}

/// `|SL_2(Z/N)| = N^3 prod_{p | N} (1 - 1/p^2)`.
pub fn sl2_order(n: u32) -> usize {
    let mut order = (n as usize).pow(3);
    for q in prime_power_split(n) {
        let p = (2..=q).find(|p| q % p == 0).unwrap() as usize;
        order = order / (p * p) * (p * p - 1);
    }
    order
}

type Predicate = Arc<dyn Fn(&ModMatrix) -> bool + Send + Sync>;

/// A congruence subgroup given by a predicate on residues mod `level`.
#[derive(Clone)]
pub struct SubgroupSpec {
    name: String,
    level: u32,
    pred: Predicate,
}

impl fmt::Debug for SubgroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubgroupSpec({}, level {})", self.name, self.level)
    }
}

impl fmt::Display for SubgroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

fn divides(m: u32, x: u32) -> bool {
    x.is_multiple_of(m)
}

impl SubgroupSpec {
    pub fn custom(name: &str, level: u32, pred: impl Fn(&ModMatrix) -> bool + Send + Sync + 'static) -> Self {
        SubgroupSpec { name: name.into(), level, pred: Arc::new(pred) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Whether a matrix mod a multiple of the level satisfies the predicate.
    pub fn contains(&self, m: &ModMatrix) -> bool {
        (self.pred)(&m.reduce(self.level))
    }

    pub fn sl2() -> Self {
        Self::custom("SL2(Z)", 1, |_| true)
    }

    /// `a = d = 1`, `b = c = 0 mod n`.
    pub fn gamma(n: u32) -> Self {
        Self::custom(&format!("Gamma({n})"), n, move |m| {
            m.a == 1 % n && m.d == 1 % n && divides(n, m.b) && divides(n, m.c)
        })
    }

    /// `a = d = 1`, `c = 0 mod n`.
    pub fn gamma1(n: u32) -> Self {
        Self::custom(&format!("Gamma1({n})"), n, move |m| m.a == 1 % n && m.d == 1 % n && divides(n, m.c))
    }

    /// `c = 0 mod n`.
    pub fn gamma0(n: u32) -> Self {
        Self::custom(&format!("Gamma0({n})"), n, move |m| divides(n, m.c))
    }

    /// `a = d = 1 mod 10`, `b = 0 mod 2`, `c = 0 mod 10`; equal to `Gamma(2) ∩ Gamma1(5)`.
    pub fn g1() -> Self {
        Self::custom("G1", 10, |m| m.a == 1 && m.d == 1 && m.b % 2 == 0 && m.c == 0)
    }

    /// `a = d = 1`, `c = 0 mod 5` with the reduction mod 2 in the cyclic
    /// subgroup of order 3; index 2 in `Gamma1(5)`.
    pub fn g2() -> Self {
        Self::custom("G2", 10, |m| m.a % 5 == 1 && m.d % 5 == 1 && m.c % 5 == 0 && in_order_three_mod2(m))
    }

    /// `a = d = 1 mod 10`, `b = 0 mod 2`, `c = 0 mod 5`, read literally. This
    /// has index 3 in `Gamma1(5)` and is not the genus 1 group `G2`.
    pub fn g2_literal() -> Self {
        Self::custom("G2-literal", 10, |m| m.a == 1 && m.d == 1 && m.b % 2 == 0 && m.c % 5 == 0)
    }

    /// `a = d = 1 mod 10`, `b = 0 mod 5`, `c = 0 mod 10`; equal to `Gamma0(2) ∩ Gamma(5)`.
    pub fn g3() -> Self {
        Self::custom("G3", 10, |m| m.a == 1 && m.d == 1 && m.b % 5 == 0 && m.c == 0)
    }

    /// Congruent to `I`, `(1,5;5,6)` or `(6,5;5,1)` mod 10.
    pub fn g4() -> Self {
        Self::custom("G4", 10, |m| matches!((m.a, m.b, m.c, m.d), (1, 0, 0, 1) | (1, 5, 5, 6) | (6, 5, 5, 1)))
    }

    /// Both predicates; the level is the lcm of the two.
    pub fn intersect(&self, other: &Self) -> Self {
        let level = lcm(self.level, other.level);
        let (p, q) = (self.clone(), other.clone());
        Self::custom(&format!("{}∩{}", self.name, other.name), level, move |m| p.contains(m) && q.contains(m))
    }

    /// Built-in names: `SL2(Z)`, `Gamma(N)`, `Gamma1(N)`, `Gamma0(N)`, `G1`..`G4`,
    /// `G2-literal`, and intersections joined by `&` or `∩`.
    pub fn parse(s: &str) -> Result<Self, CongruenceError> {
        s.parse()
    }
}

fn in_order_three_mod2(m: &ModMatrix) -> bool {
    matches!((m.a % 2, m.b % 2, m.c % 2, m.d % 2), (1, 0, 0, 1) | (0, 1, 1, 1) | (1, 1, 1, 0))
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    a / gcd(a, b) * b
}

impl FromStr for SubgroupSpec {
    type Err = CongruenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(['&', '∩']).map(str::trim).collect();
        if parts.len() > 1 {
            let mut spec = parts[0].parse::<SubgroupSpec>()?;
            for p in &parts[1..] {
                spec = spec.intersect(&p.parse()?);
            }
            return Ok(spec);
        }
        let unknown = || CongruenceError::UnknownGroup(s.into());
        let arg = |prefix: &str| -> Option<u32> {
            s.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?.trim().parse().ok()
        };
        let spec = match s {
            "SL2(Z)" | "SL2" | "Gamma(1)" => Self::sl2(),
            "G1" => Self::g1(),
            "G2" => Self::g2(),
            "G2-literal" => Self::g2_literal(),
            "G3" => Self::g3(),
            "G4" => Self::g4(),
            _ => {
                if let Some(n) = arg("Gamma1") {
                    Self::gamma1(n)
                } else if let Some(n) = arg("Gamma0") {
                    Self::gamma0(n)
                } else if let Some(n) = arg("Gamma") {
                    Self::gamma(n)
                } else {
                    return Err(unknown());
                }
            }
        };
        if spec.level == 0 || spec.level > MAX_MODULUS {
            return Err(CongruenceError::ModulusOutOfRange(spec.level));
        }
        Ok(spec)
    }
}

/// Image of a congruence subgroup in `SL_2(Z/N)`.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub name: String,
    pub modulus: u32,
    /// Sorted.
    pub elements: Vec<ModMatrix>,
    set: HashSet<ModMatrix>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, m: &ModMatrix) -> bool {
        self.set.contains(m)
    }

    pub fn contains_minus_identity(&self) -> bool {
        self.contains(&ModMatrix::identity(self.modulus).neg())
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|m| other.contains(m))
    }

    /// `H ∪ -H`.
    pub fn with_minus_identity(&self) -> Subgroup {
        let mut set = self.set.clone();
        set.extend(self.elements.iter().map(ModMatrix::neg));
        let mut elements: Vec<_> = set.iter().copied().collect();
        elements.sort();
        Subgroup { name: format!("±{}", self.name), modulus: self.modulus, elements, set }
    }
}

fn compute_image(spec: &SubgroupSpec, n: u32) -> Result<Subgroup, CongruenceError> {
    check_modulus(n)?;
    if !n.is_multiple_of(spec.level) {
        return Err(CongruenceError::LevelMismatch { name: spec.name.clone(), level: spec.level, modulus: n });
    }
    let elements: Vec<_> = enumerate_group(n)?.into_iter().filter(|m| spec.contains(m)).collect();
    let set: HashSet<_> = elements.iter().copied().collect();
    let closed = set.contains(&ModMatrix::identity(n))
        && elements.iter().all(|x| set.contains(&x.inverse()) && elements.iter().all(|y| set.contains(&x.mul(y))));
    if !closed {
        return Err(CongruenceError::NotAGroup(spec.name.clone()));
    }
    Ok(Subgroup { name: spec.name.clone(), modulus: n, elements, set })
}

type ImageCell = Arc<OnceLock<Result<Arc<Subgroup>, CongruenceError>>>;

/// Image mod `n`, with the closure check; memoized per `(name, n)`.
pub fn image_of(spec: &SubgroupSpec, n: u32) -> Result<Arc<Subgroup>, CongruenceError> {
    static CACHE: OnceLock<Mutex<HashMap<(String, u32), ImageCell>>> = OnceLock::new();
    let cell = {
        let mut map = CACHE.get_or_init(Default::default).lock().unwrap_or_else(|e| e.into_inner());
        map.entry((spec.name.clone(), n)).or_default().clone()
    };
    cell.get_or_init(|| compute_image(spec, n).map(Arc::new)).clone()
}

/// Group of order at most 6 identified by order, commutativity and element orders.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientShape {
    pub order: usize,
    pub abelian: bool,
    pub element_orders: Vec<usize>,
    pub name: String,
}

fn shape_name(order: usize, abelian: bool, orders: &[usize]) -> String {
    let max = orders.iter().copied().max().unwrap_or(1);
    match (order, abelian) {
        (1, _) => "trivial".into(),
        (n, true) if max == n => format!("C{n}"),
        (4, true) => "C2xC2".into(),
        (6, false) => "S3".into(),
        (n, a) => format!("order {n}{}", if a { ", abelian" } else { "" }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupReport {
    pub inner: String,
    pub outer: String,
    pub modulus: u32,
    pub index: usize,
    pub normal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient_shape: Option<QuotientShape>,
}

/// Index, normality and, for normal subgroups of index at most 6, the quotient.
pub fn subgroup_report(inner: &SubgroupSpec, outer: &SubgroupSpec, n: u32) -> Result<SubgroupReport, CongruenceError> {
    let h = image_of(inner, n)?;
    let g = image_of(outer, n)?;
    if !h.is_subset_of(&g) {
        return Err(CongruenceError::NotContained { inner: inner.name.clone(), outer: outer.name.clone() });
    }
    let index = g.order() / h.order();
    let normal = g.elements.iter().all(|x| {
        let xi = x.inverse();
        h.elements.iter().all(|y| h.contains(&x.mul(y).mul(&xi)))
    });
    let quotient_shape = (normal && index <= 6).then(|| quotient(&g, &h));
    Ok(SubgroupReport {
        inner: inner.name.clone(),
        outer: outer.name.clone(),
        modulus: n,
        index,
        normal,
        quotient_shape,
    })
}

fn quotient(g: &Subgroup, h: &Subgroup) -> QuotientShape {
    // coset label of x = smallest element of x H
    let label = |x: &ModMatrix| h.elements.iter().map(|y| x.mul(y)).min().unwrap();
    let reps: Vec<ModMatrix> = {
        let mut r: Vec<_> = g.elements.iter().map(label).collect();
        r.sort();
        r.dedup();
        r
    };
    let abelian = reps.iter().all(|x| reps.iter().all(|y| label(&x.mul(y)) == label(&y.mul(x))));
    let id = label(&ModMatrix::identity(g.modulus));
    let mut element_orders: Vec<usize> = reps
        .iter()
        .map(|x| {
            let mut k = 1;
            let mut p = *x;
            while label(&p) != id {
                p = p.mul(x);
                k += 1;
            }
            k
        })
        .collect();
    element_orders.sort();
    let name = shape_name(reps.len(), abelian, &element_orders);
    QuotientShape { order: reps.len(), abelian, element_orders, name }
}

/// Index, elliptic points, cusps and genus of a congruence subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenusData {
    pub mu: usize,
    pub eps2: usize,
    pub eps3: usize,
    pub cusps: usize,
    pub genus: usize,
}

/// Cosets of `±H` in `SL_2(Z/N)` permuted by `S` and `T`; the genus follows from
/// `g = 1 + mu/12 - eps2/4 - eps3/3 - cusps/2`.
pub fn genus_data(spec: &SubgroupSpec, n: u32) -> Result<GenusData, CongruenceError> {
    let h = image_of(spec, n)?.with_minus_identity();
    let group = enumerate_group(n)?;
    let size = (n as usize).pow(4);
    let mut coset = vec![usize::MAX; size];
    let mut mu = 0;
    for g in &group {
        if coset[g.code()] != usize::MAX {
            continue;
        }
        for x in &h.elements {
            coset[x.mul(g).code()] = mu;
        }
        mu += 1;
    }
    let reps: Vec<ModMatrix> = {
        let mut r = vec![None; mu];
        for g in &group {
            r[coset[g.code()]].get_or_insert(*g);
        }
        r.into_iter().map(Option::unwrap).collect()
    };
    let action = |m: &ModMatrix| -> Vec<usize> { reps.iter().map(|g| coset[g.mul(m).code()]).collect() };
    let s = ModMatrix::s(n);
    let t = ModMatrix::t(n);
    let sigma_s = action(&s);
    let sigma_st = action(&s.mul(&t));
    let sigma_t = action(&t);
    let fixed = |p: &[usize]| p.iter().enumerate().filter(|(i, j)| i == *j).count();
    let eps2 = fixed(&sigma_s);
    let eps3 = fixed(&sigma_st);
    let cusps = cycle_count(&sigma_t);
    let twelve_g = 12 + mu as i64 - 3 * eps2 as i64 - 4 * eps3 as i64 - 6 * cusps as i64;
    assert!(twelve_g >= 0 && twelve_g % 12 == 0, "non-integral genus for {}: 12g = {twelve_g}", spec.name);
    Ok(GenusData { mu, eps2, eps3, cusps, genus: (twelve_g / 12) as usize })
}

fn cycle_count(p: &[usize]) -> usize {
    let mut seen = vec![false; p.len()];
    let mut cycles = 0;
    for i in 0..p.len() {
        if !seen[i] {
            cycles += 1;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = p[j];
            }
        }
    }
    cycles
}

/// The groups between `Gamma(10)` and `SL2(Z)` whose function fields are
/// described in terms of `phi`, `g_i` and `delta`, with a generator of each field.
pub fn lattice_nodes() -> Vec<(SubgroupSpec, &'static str)> {
    vec![
        (SubgroupSpec::sl2(), "j"),
        (SubgroupSpec::gamma0(5), "j5"),
        (SubgroupSpec::gamma1(5), "phi^5"),
        (SubgroupSpec::gamma0(10), "j10"),
        (SubgroupSpec::gamma1(10), "g1"),
        (SubgroupSpec::gamma(5), "phi"),
        (SubgroupSpec::g1(), "g1, g2"),
        (SubgroupSpec::g2(), "phi^5, delta"),
        (SubgroupSpec::g3(), "phi, g1"),
        (SubgroupSpec::g4(), "phi, delta"),
        (SubgroupSpec::gamma(10), "phi, delta/g1"),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeNode {
    pub name: String,
    pub generators: String,
    pub genus: usize,
}

/// An inclusion `inner ⊂ outer` with no listed group strictly between; `degree`
/// is the index of `±inner` in `±outer`, the degree of the field extension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeEdge {
    pub inner: String,
    pub outer: String,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lattice {
    pub nodes: Vec<LatticeNode>,
    pub edges: Vec<LatticeEdge>,
}

pub fn lattice() -> Result<Lattice, CongruenceError> {
    let specs = lattice_nodes();
    let images: Vec<Subgroup> = specs
        .iter()
        .map(|(s, _)| Ok(image_of(s, 10)?.with_minus_identity()))
        .collect::<Result<_, CongruenceError>>()?;
    let below =
        |i: usize, j: usize| i != j && images[i].is_subset_of(&images[j]) && !images[j].is_subset_of(&images[i]);
    let mut edges = Vec::new();
    for i in 0..specs.len() {
        for j in 0..specs.len() {
            if below(i, j) && !(0..specs.len()).any(|k| below(i, k) && below(k, j)) {
                edges.push(LatticeEdge {
                    inner: specs[i].0.name.clone(),
                    outer: specs[j].0.name.clone(),
                    degree: images[j].order() / images[i].order(),
                });
            }
        }
    }
    let nodes = specs
        .iter()
        .map(|(s, gens)| {
            Ok(LatticeNode { name: s.name.clone(), generators: gens.to_string(), genus: genus_data(s, 10)?.genus })
        })
        .collect::<Result<_, CongruenceError>>()?;
    Ok(Lattice { nodes, edges })
}

impl Lattice {
    /// Graphviz rendering, larger groups (smaller fields) at the top.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n");
        let ids: BTreeMap<&str, usize> = self.nodes.iter().enumerate().map(|(i, n)| (n.name.as_str(), i)).collect();
        for (i, n) in self.nodes.iter().enumerate() {
            out += &format!("  n{i} [label=\"{}\\nC({})\\ngenus {}\"];\n", n.name, n.generators, n.genus);
        }
        for e in &self.edges {
            out += &format!("  n{} -> n{} [label=\"{}\"];\n", ids[e.inner.as_str()], ids[e.outer.as_str()], e.degree);
        }
        out + "}\n"
    }
}
