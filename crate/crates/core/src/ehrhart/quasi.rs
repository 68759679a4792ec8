use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use super::count::LatticeCounter;
use super::EhrhartError;
use crate::arith::{Rational, Scalar};
use crate::factory::denominator;
use crate::geometry::Triangle;

/// Largest denominator [`certify_minimal_period`] accepts by default.
pub const DEFAULT_DEN_CAP: u64 = 2000;

/// Samples `(t, L(t))` with strictly increasing `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub samples: Vec<(u64, BigInt)>,
}

impl CountTable {
    pub fn values(&self) -> Vec<BigInt> {
        self.samples.iter().map(|(_, l)| l.clone()).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("t,L\n");
        for (t, l) in &self.samples {
            s.push_str(&format!("{t},{l}\n"));
        }
        s
    }

    pub fn to_json(&self) -> Value {
        json!(self
            .samples
            .iter()
            .map(|(t, l)| json!({ "t": t, "L": l.to_string() }))
            .collect::<Vec<_>>())
    }
}

/// `L(t) = c₂·t² + c₁·t + c₀` with the coefficients chosen by `t mod period`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiPolynomial {
    pub period: u64,
    /// `[c₂, c₁, c₀]` for each residue class.
    pub coeffs: Vec<[Rational; 3]>,
}

impl QuasiPolynomial {
    pub fn evaluate(&self, t: u64) -> Rational {
        let [c2, c1, c0] = &self.coeffs[(t % self.period) as usize];
        let tr = Rational::from_integer(BigInt::from(t));
        c2 * &tr * &tr + c1 * &tr + c0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "period": self.period,
            "classes": self.coeffs.iter().enumerate().map(|(r, [c2, c1, c0])| json!({
                "residue": r,
                "c2": c2.to_string(),
                "c1": c1.to_string(),
                "c0": c0.to_string(),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(r, [c2, c1, c0])| {
                format!("t ≡ {r} (mod {}): {c2}·t² + {c1}·t + {c0}", self.period)
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// Whether every class has the same leading coefficient `area`.
    pub fn leading_coefficient_is(&self, area: &Rational) -> bool {
        self.coeffs.iter().all(|[c2, _, _]| c2 == area)
    }
}

pub fn count_table<S: Scalar>(t: &Triangle<S>, t_max: u64) -> CountTable {
    let counter = LatticeCounter::new(t);
    CountTable {
        samples: (0..=t_max).map(|k| (k, counter.count(k))).collect(),
    }
}

/// Coefficients `[c₂, c₁, c₀]` of the parabola through three points.
fn interpolate(pts: &[(u64, BigInt)]) -> [Rational; 3] {
    let r = |n: u64| Rational::from_integer(BigInt::from(n));
    let (x0, x1, x2) = (r(pts[0].0), r(pts[1].0), r(pts[2].0));
    let y = |i: usize| Rational::from_integer(pts[i].1.clone());
    let d01 = (y(1) - y(0)) / (&x1 - &x0);
    let d12 = (y(2) - y(1)) / (&x2 - &x1);
    let c2 = (&d12 - &d01) / (&x2 - &x0);
    let c1 = &d01 - &c2 * (&x0 + &x1);
    let c0 = y(0) - &c2 * &x0 * &x0 - &c1 * &x0;
    [c2, c1, c0]
}

/// Fits a degree-≤2 polynomial to each residue class mod `period` through
/// its first three samples and checks every other sample against it.
pub fn fit_quasipolynomial(
    table: &CountTable,
    period: u64,
) -> Result<QuasiPolynomial, EhrhartError> {
    if period == 0 {
        return Err(EhrhartError::ZeroPeriod);
    }
    let mut classes: Vec<Vec<(u64, BigInt)>> = vec![Vec::new(); period as usize];
    for (t, l) in &table.samples {
        classes[(t % period) as usize].push((*t, l.clone()));
    }
    let mut coeffs = Vec::with_capacity(period as usize);
    for (class, pts) in classes.iter().enumerate() {
        if pts.len() < 3 {
            return Err(EhrhartError::InsufficientSamples {
                period,
                class: class as u64,
            });
        }
        coeffs.push(interpolate(pts));
    }
    let q = QuasiPolynomial { period, coeffs };
    for (t, l) in &table.samples {
        let expected = q.evaluate(*t);
        if expected != Rational::from_integer(l.clone()) {
            return Err(EhrhartError::InconsistentFit {
                period,
                t: *t,
                expected: expected.to_string(),
                actual: l.clone(),
            });
        }
    }
    Ok(q)
}

/// A proof of the minimal Ehrhart period of a rational triangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub denominator: BigInt,
    pub period: u64,
    pub quasi: QuasiPolynomial,
    pub samples: u64,
    pub leading_matches_area: bool,
}

impl Certificate {
    pub fn to_json(&self) -> Value {
        json!({
            "denominator": self.denominator.to_string(),
            "period": self.period,
            "samples": self.samples,
            "leading_coefficient_is_area": self.leading_matches_area,
            "quasipolynomial": self.quasi.to_json(),
            "status": "certified",
        })
    }
}

pub fn certify_minimal_period(
    t: &Triangle<crate::arith::Rational>,
) -> Result<Certificate, EhrhartError> {
    certify_with_cap(t, DEFAULT_DEN_CAP)
}

/// The period of a rational triangle divides its denominator `den`, so three
/// samples per class mod `den` determine the whole quasipolynomial. The
/// minimal period is then the least divisor of `den` under which the class
/// polynomials agree.
pub fn certify_with_cap(t: &Triangle<Rational>, cap: u64) -> Result<Certificate, EhrhartError> {
    let den_big = denominator(t);
    let den = match den_big.to_u64() {
        Some(d) if d <= cap => d,
        _ => {
            return Err(EhrhartError::BudgetExceeded { den: den_big, cap });
        }
    };
    let samples = 3 * den;
    let table = count_table(t, samples - 1);
    let full = fit_quasipolynomial(&table, den)?;
    let period = (1..=den)
        .filter(|p| den % p == 0)
        .find(|&p| (0..den).all(|k| full.coeffs[k as usize] == full.coeffs[(k % p) as usize]))
        .expect("den itself always qualifies");
    let quasi = QuasiPolynomial {
        period,
        coeffs: full.coeffs[..period as usize].to_vec(),
    };
    let leading_matches_area = quasi.leading_coefficient_is(&t.area());
    Ok(Certificate {
        denominator: den_big,
        period,
        quasi,
        samples,
        leading_matches_area,
    })
}

/// First `t` where two count sequences, or a count and a prediction, differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divergence {
    pub t: u64,
    pub left: String,
    pub right: String,
}

impl Divergence {
    fn to_json(&self) -> Value {
        json!({ "t": self.t, "left": self.left, "right": self.right })
    }
}

/// Outcome of checking a candidate period on `0..=t_max` only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RangeReport {
    pub period: u64,
    pub t_max: u64,
    pub passed: bool,
    pub quasi: Option<QuasiPolynomial>,
    pub divergence: Option<Divergence>,
}

impl RangeReport {
    pub fn to_json(&self) -> Value {
        json!({
            "period": self.period,
            "t_max": self.t_max,
            "passed": self.passed,
            "status": format!("verified for t <= {}", self.t_max),
            "quasipolynomial": self.quasi.as_ref().map(QuasiPolynomial::to_json),
            "first_divergence": self.divergence.as_ref().map(Divergence::to_json),
        })
    }
}

pub fn verify_period_on_range<S: Scalar>(
    t: &Triangle<S>,
    period: u64,
    t_max: u64,
) -> Result<RangeReport, EhrhartError> {
    if period == 0 {
        return Err(EhrhartError::ZeroPeriod);
    }
    if t_max + 1 < 3 * period {
        return Err(EhrhartError::InsufficientSamples {
            period,
            class: (t_max + 1) % period,
        });
    }
    let table = count_table(t, t_max);
    match fit_quasipolynomial(&table, period) {
        Ok(q) => Ok(RangeReport {
            period,
            t_max,
            passed: true,
            quasi: Some(q),
            divergence: None,
        }),
        Err(EhrhartError::InconsistentFit {
            t,
            expected,
            actual,
            ..
        }) => Ok(RangeReport {
            period,
            t_max,
            passed: false,
            quasi: None,
            divergence: Some(Divergence {
                t,
                left: expected,
                right: actual.to_string(),
            }),
        }),
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub t_max: u64,
    pub equivalent: bool,
    pub divergence: Option<Divergence>,
}

impl EquivalenceReport {
    pub fn to_json(&self) -> Value {
        json!({
            "t_max": self.t_max,
            "equivalent": self.equivalent,
            "status": format!("verified for t <= {}", self.t_max),
            "first_divergence": self.divergence.as_ref().map(Divergence::to_json),
        })
    }
}

/// Compares `L_{T₁}(t)` and `L_{T₂}(t)` for `t = 0..=t_max`.
pub fn ehrhart_equivalent<S: Scalar, U: Scalar>(
    t1: &Triangle<S>,
    t2: &Triangle<U>,
    t_max: u64,
) -> EquivalenceReport {
    let c1 = LatticeCounter::new(t1);
    let c2 = LatticeCounter::new(t2);
    let divergence = (0..=t_max).find_map(|k| {
        let (l1, l2) = (c1.count(k), c2.count(k));
        (l1 != l2).then(|| Divergence {
            t: k,
            left: l1.to_string(),
            right: l2.to_string(),
        })
    });
    EquivalenceReport {
        t_max,
        equivalent: divergence.is_none(),
        divergence,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::geometry::Point2;

    fn tri(v: [(i64, i64, i64, i64); 3]) -> Triangle<Rational> {
        let [a, b, c] = v.map(|(xn, xd, yn, yd)| Point2::new(rat(xn, xd), rat(yn, yd)));
        Triangle::from_points(a, b, c).unwrap()
    }

    #[test]
    fn unit_simplex_fit() {
        let t = tri([(0, 1, 0, 1), (1, 1, 0, 1), (0, 1, 1, 1)]);
        let table = count_table(&t, 4);
        assert_eq!(table.values(), [1, 3, 6, 10, 15].map(BigInt::from));
        let q = fit_quasipolynomial(&table, 1).unwrap();
        assert_eq!(q.coeffs[0], [rat(1, 2), rat(3, 2), rat(1, 1)]);
    }

    #[test]
    fn period_two_triangle() {
        let t = tri([(0, 1, 0, 1), (1, 2, 2, 1), (1, 2, 0, 1)]);
        let table = count_table(&t, 12);
        let q = fit_quasipolynomial(&table, 2).unwrap();
        assert_eq!(q.coeffs[0], [rat(1, 2), rat(3, 2), rat(1, 1)]);
        assert_eq!(q.coeffs[1], [rat(1, 2), rat(1, 2), rat(0, 1)]);
        assert!(matches!(
            fit_quasipolynomial(&table, 1),
            Err(EhrhartError::InconsistentFit { t: 3, .. })
        ));
        let cert = certify_minimal_period(&t).unwrap();
        assert_eq!(cert.period, 2);
        assert!(cert.leading_matches_area);
    }

    #[test]
    fn barycentric_unit_table() {
        let t = tri([(-1, 3, -1, 3), (2, 3, -1, 3), (-1, 3, 2, 3)]);
        assert_eq!(
            count_table(&t, 7).values(),
            [1, 1, 1, 10, 10, 10, 28, 28].map(BigInt::from)
        );
        assert_eq!(certify_minimal_period(&t).unwrap().period, 3);
    }

    #[test]
    fn insufficient_samples_reported() {
        let t = tri([(0, 1, 0, 1), (1, 1, 0, 1), (0, 1, 1, 1)]);
        let table = count_table(&t, 4);
        assert!(matches!(
            fit_quasipolynomial(&table, 2),
            Err(EhrhartError::InsufficientSamples { class: 1, .. })
        ));
        assert!(verify_period_on_range(&t, 3, 5).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let t = tri([(0, 1, 0, 1), (1, 2003, 0, 1), (0, 1, 1, 1)]);
        assert!(matches!(
            certify_with_cap(&t, 2000),
            Err(EhrhartError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn equivalence_reports_first_divergence() {
        let a = tri([(0, 1, 0, 1), (1, 1, 0, 1), (0, 1, 1, 1)]);
        let b = tri([(0, 1, 0, 1), (2, 1, 0, 1), (0, 1, 1, 1)]);
        let r = ehrhart_equivalent(&a, &b, 5);
        assert!(!r.equivalent);
        assert_eq!(r.divergence.unwrap().t, 1);
        assert!(ehrhart_equivalent(&a, &a, 5).equivalent);
    }
}
