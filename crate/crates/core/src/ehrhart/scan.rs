use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use serde_json::{json, Value};

use super::quasi::certify_with_cap;
use super::EhrhartError;
use crate::factory::{is_markov_instance, open_problem_triangle};

/// Verdict for one member of the two-parameter family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanEntry {
    pub b: u64,
    pub c: u64,
    /// `(b, c)` divided by their gcd; the triangle only depends on this.
    pub reduced: (u64, u64),
    pub denominator: Option<BigInt>,
    pub period: Option<u64>,
    pub pseudo_integral: bool,
    pub markov: bool,
    pub budget_exceeded: bool,
}

impl ScanEntry {
    pub fn to_json(&self) -> Value {
        json!({
            "b": self.b,
            "c": self.c,
            "reduced": [self.reduced.0, self.reduced.1],
            "denominator": self.denominator.as_ref().map(|d| d.to_string()),
            "period": self.period,
            "pseudo_integral": self.pseudo_integral,
            "markov": self.markov,
            "budget_exceeded": self.budget_exceeded,
        })
    }
}

/// Certifies the minimal period of every triangle `(0,0)`, `(c/b)·(1,0)`,
/// `(b/c)·(aq − 1, a²)` with `1 ≤ b ≤ b_max`, `1 ≤ c ≤ c_max`, flagging the
/// pseudo-integral ones and those where `(a, b, c)` is a Markov triple with
/// `q ≡ 3·c·b⁻¹ (mod a)`.
///
/// Pairs with the same ratio give the same triangle and share one
/// certificate. Triangles above the denominator cap are reported, not
/// certified.
pub fn scan_open_problem(
    a: u64,
    q: i64,
    b_max: u64,
    c_max: u64,
    cap: u64,
) -> Result<Vec<ScanEntry>, EhrhartError> {
    let (ab, qb) = (BigInt::from(a), BigInt::from(q));
    let mut cache: HashMap<(u64, u64), (Option<BigInt>, Option<u64>, bool)> = HashMap::new();
    let mut out = Vec::new();
    for b in 1..=b_max {
        for c in 1..=c_max {
            let g = b.gcd(&c);
            let reduced = (b / g, c / g);
            let verdict = match cache.get(&reduced) {
                Some(v) => v.clone(),
                None => {
                    let t = open_problem_triangle(
                        &ab,
                        &qb,
                        &BigInt::from(reduced.0),
                        &BigInt::from(reduced.1),
                    )?;
                    let v = match certify_with_cap(&t, cap) {
                        Ok(cert) => (Some(cert.denominator), Some(cert.period), false),
                        Err(EhrhartError::BudgetExceeded { den, .. }) => (Some(den), None, true),
                        Err(e) => return Err(e),
                    };
                    cache.insert(reduced, v.clone());
                    v
                }
            };
            let (denominator, period, budget_exceeded) = verdict;
            out.push(ScanEntry {
                b,
                c,
                reduced,
                denominator,
                period,
                pseudo_integral: period == Some(1),
                markov: is_markov_instance(&ab, &qb, &BigInt::from(b), &BigInt::from(c)),
                budget_exceeded,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_scan() {
        let entries = scan_open_problem(1, 1, 5, 5, 2000).unwrap();
        let hits: Vec<(u64, u64)> = entries
            .iter()
            .filter(|e| e.pseudo_integral && e.reduced == (e.b, e.c))
            .map(|e| (e.b, e.c))
            .collect();
        assert_eq!(hits, [(1, 1), (1, 2), (2, 1), (2, 5), (5, 2)]);
        assert!(scan_open_problem(1, 1, 0, 5, 2000).unwrap().is_empty());
    }
}
