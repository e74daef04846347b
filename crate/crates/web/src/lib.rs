//! wasm-bindgen entry points for the static demo page in `www/`.
//!
//! Every function returns a string (plain text or JSON) or an error message,
//! so the same code runs natively under `cargo test`.

use bianchi::congruence::{self, SubgroupSpec};
use bianchi::identities::{self, VerifyConfig};
use bianchi::modular;
use num_rational::Rational64;
use serde_json::json;
use wasm_bindgen::prelude::*;

const MAX_ORDER: i64 = 200;

fn parse_order(s: &str) -> Result<Rational64, String> {
    let s = s.trim();
    let r = match s.split_once('/') {
        Some((n, d)) => {
            let (n, d) = (n.trim().parse::<i64>(), d.trim().parse::<i64>());
            match (n, d) {
                (Ok(n), Ok(d)) if d > 0 => Rational64::new(n, d),
                _ => return Err(format!("invalid order `{s}`")),
            }
        }
        None => Rational64::from_integer(s.parse().map_err(|_| format!("invalid order `{s}`"))?),
    };
    if r > Rational64::from_integer(MAX_ORDER) {
        return Err(format!("order is capped at {MAX_ORDER} in the browser"));
    }
    Ok(r)
}

/// `exponent  coefficient` lines followed by the `O(q^order)` marker.
#[wasm_bindgen]
pub fn expand(name: &str, order: &str) -> Result<String, String> {
    let s = modular::named_series(name, parse_order(order)?).map_err(|e| e.to_string())?;
    let mut out: String = s.terms().map(|(e, c)| format!("{e}  {c}\n")).collect();
    out.push_str(&format!("O(q^{})", s.order()));
    Ok(out)
}

/// Names accepted by [`expand`], one per line.
#[wasm_bindgen]
pub fn series_names() -> String {
    modular::NamedFunction::ALL.iter().map(|f| f.name()).collect::<Vec<_>>().join("\n")
}

/// Names accepted by [`verify`], one per line.
#[wasm_bindgen]
pub fn identity_names() -> String {
    identities::registry().iter().map(|c| c.name.as_str()).collect::<Vec<_>>().join("\n")
}

/// JSON result of one identity check.
#[wasm_bindgen]
pub fn verify(name: &str, order: &str, samples: u32, seed: u32) -> Result<String, String> {
    let cfg = VerifyConfig { series_order: parse_order(order)?, samples, seed: seed.into(), ..VerifyConfig::default() };
    let r = identities::run_identity(name, &cfg).map_err(|e| e.to_string())?;
    Ok(serde_json::to_string_pretty(&r).expect("result serializes"))
}

/// JSON with image order, index, cusps and genus of a congruence subgroup.
#[wasm_bindgen]
pub fn group(spec: &str) -> Result<String, String> {
    let g: SubgroupSpec = spec.parse().map_err(|e: congruence::CongruenceError| e.to_string())?;
    let n = g.level();
    let image = congruence::image_of(&g, n).map_err(|e| e.to_string())?;
    let data = congruence::genus_data(&g, n).map_err(|e| e.to_string())?;
    let v = json!({
        "name": g.name(),
        "level": n,
        "order": image.order(),
        "genus_data": data,
    });
    Ok(serde_json::to_string_pretty(&v).expect("json value"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(parse_order("51/5").unwrap(), Rational64::new(51, 5));
        assert!(parse_order("1/0").is_err());
        assert!(parse_order("1000").is_err());
    }

    #[test]
    fn listings() {
        assert!(series_names().lines().any(|l| l == "phi"));
        assert_eq!(identity_names().lines().count(), identities::registry().len());
    }
}
