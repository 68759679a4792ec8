//! Executable checks of the structural statements about Markov triangles.
//! Each claim runs the engine on the relevant family and returns a report
//! of individual checks; rational period claims are backed by certificates,
//! irrational ones are verified on a finite range and labelled as such.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::arith::{quad_sign, rat, QuadElem, Rational, Scalar};
use crate::ehrhart::{
    certify_minimal_period, ehrhart_equivalent, verify_period_on_range, HalfShearCounter,
    LatticeCounter, DEFAULT_DEN_CAP,
};
use crate::factory::{
    denominator, limit_triangle, sequence_triangle, standard_triangle, to_barycentric, LimitSpec,
    StandardPositionSpec,
};
use crate::geometry::{
    det, geometric_mutation, hausdorff_distance_sq_upper, integral_barycentre, IntVec2, Point2,
    Triangle,
};
use crate::markov::{lagrange_discriminant, tree, MarkovTriple};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    ShearInvariance,
    BarycentricPeriodThree,
    StandardPeriodDividesApex,
    StandardDilatePseudoIntegral,
    TwoPositionPeriodTwo,
    LimitPseudoRational,
    BarycentricLimitPseudoIntegral,
    MutationPreservesBarycentre,
    HausdorffConvergence,
    BarycentreOnLimitEdge,
}

impl Claim {
    pub const ALL: [Claim; 10] = [
        Claim::ShearInvariance,
        Claim::BarycentricPeriodThree,
        Claim::StandardPeriodDividesApex,
        Claim::StandardDilatePseudoIntegral,
        Claim::TwoPositionPeriodTwo,
        Claim::LimitPseudoRational,
        Claim::BarycentricLimitPseudoIntegral,
        Claim::MutationPreservesBarycentre,
        Claim::HausdorffConvergence,
        Claim::BarycentreOnLimitEdge,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Claim::ShearInvariance => "shear-invariance",
            Claim::BarycentricPeriodThree => "barycentric-period-three",
            Claim::StandardPeriodDividesApex => "standard-period-divides-apex",
            Claim::StandardDilatePseudoIntegral => "standard-dilate-pseudo-integral",
            Claim::TwoPositionPeriodTwo => "two-position-period-two",
            Claim::LimitPseudoRational => "limit-pseudo-rational",
            Claim::BarycentricLimitPseudoIntegral => "barycentric-limit-pseudo-integral",
            Claim::MutationPreservesBarycentre => "mutation-preserves-barycentre",
            Claim::HausdorffConvergence => "hausdorff-convergence",
            Claim::BarycentreOnLimitEdge => "barycentre-on-limit-edge",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            Claim::ShearInvariance => "a half-shear image of a rational triangle is Ehrhart equivalent to it",
            Claim::BarycentricPeriodThree => {
                "Markov triangles in barycentric position are Ehrhart equivalent with period 3"
            }
            Claim::StandardPeriodDividesApex => {
                "the period of a standard p1-position triangle divides p1"
            }
            Claim::StandardDilatePseudoIntegral => {
                "the p1-dilate of a standard p1-position triangle is pseudo-integral"
            }
            Claim::TwoPositionPeriodTwo => "standard 2-position triangles have period 2",
            Claim::LimitPseudoRational => {
                "the a-dilate of the limit triangle counts like the a-dilate of the branch triangles"
            }
            Claim::BarycentricLimitPseudoIntegral => {
                "three times the barycentric limit triangle is pseudo-integral"
            }
            Claim::MutationPreservesBarycentre => "geometric mutation preserves the integral barycentre",
            Claim::HausdorffConvergence => "branch triangles converge to the limit triangle",
            Claim::BarycentreOnLimitEdge => {
                "the barycentre is the only rational point on the irrational edge line"
            }
        }
    }

    pub fn from_name(s: &str) -> Option<Claim> {
        Claim::ALL.into_iter().find(|c| c.name() == s)
    }
}

/// Knobs shared by the claims; each claim reads only what it needs.
#[derive(Clone, Debug)]
pub struct ClaimParams {
    /// Markov numbers for the limit claims.
    pub a_values: Vec<u64>,
    pub t_max: Option<u64>,
    pub trials: Option<usize>,
    pub seed: u64,
}

impl Default for ClaimParams {
    fn default() -> Self {
        ClaimParams {
            a_values: Vec::new(),
            t_max: None,
            trials: None,
            seed: 0x5eed,
        }
    }
}

impl ClaimParams {
    fn a_or(&self, default: &[u64]) -> Vec<u64> {
        if self.a_values.is_empty() {
            default.to_vec()
        } else {
            self.a_values.clone()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimReport {
    pub claim: Claim,
    /// `certified`, `exact` or `verified for t <= N`.
    pub status: String,
    pub checks: Vec<Check>,
}

impl ClaimReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "claim": self.claim.name(),
            "statement": self.claim.statement(),
            "status": self.status,
            "passed": self.passed(),
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "passed": c.passed,
                "detail": c.detail,
            })).collect::<Vec<_>>(),
        })
    }
}

pub fn run_claim(claim: Claim, params: &ClaimParams) -> ClaimReport {
    match claim {
        Claim::ShearInvariance => shear_invariance(params),
        Claim::BarycentricPeriodThree => barycentric_period_three(params),
        Claim::StandardPeriodDividesApex => standard_period_divides_apex(),
        Claim::StandardDilatePseudoIntegral => standard_dilate_pseudo_integral(),
        Claim::TwoPositionPeriodTwo => two_position_period_two(),
        Claim::LimitPseudoRational => limit_pseudo_rational(params),
        Claim::BarycentricLimitPseudoIntegral => barycentric_limit_pseudo_integral(params),
        Claim::MutationPreservesBarycentre => mutation_preserves_barycentre(params),
        Claim::HausdorffConvergence => hausdorff_convergence(params),
        Claim::BarycentreOnLimitEdge => barycentre_on_limit_edge(params),
    }
}

/// A random nondegenerate triangle with coordinates `k/d`, `d ≤ max_den`,
/// `|k| ≤ 3·d`.
pub fn random_rational_triangle(rng: &mut impl Rng, max_den: i64) -> Triangle<Rational> {
    loop {
        let mut coord = || {
            let d = rng.gen_range(1..=max_den);
            rat(rng.gen_range(-3 * d..=3 * d), d)
        };
        let pts = [(); 3].map(|_| Point2::new(coord(), coord()));
        let [a, b, c] = pts;
        if let Ok(t) = Triangle::from_points(a, b, c) {
            return t;
        }
    }
}

pub fn random_primitive(rng: &mut impl Rng, bound: i64) -> IntVec2 {
    loop {
        let (x, y) = (rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound));
        if (x, y) != (0, 0) && x.gcd(&y) == 1 {
            return IntVec2::new(x, y);
        }
    }
}

fn shear_invariance(p: &ClaimParams) -> ClaimReport {
    let t_max = p.t_max.unwrap_or(20);
    let trials = p.trials.unwrap_or(100);
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut failures = Vec::new();
    for i in 0..trials {
        let t = random_rational_triangle(&mut rng, 10);
        let v = random_primitive(&mut rng, 5);
        let image = HalfShearCounter::new(&t, &v);
        let base = LatticeCounter::new(&t);
        if let Some(k) = (0..=t_max).find(|&k| image.count(k) != base.count(k)) {
            failures.push(format!("trial {i}: v = {v}, first difference at t = {k}"));
        }
    }
    ClaimReport {
        claim: Claim::ShearInvariance,
        status: format!("verified for t <= {t_max}"),
        checks: vec![Check::new(
            format!("{trials} random triangles with random primitive shears"),
            failures.is_empty(),
            if failures.is_empty() {
                "all count tables agree".to_string()
            } else {
                failures.join("; ")
            },
        )],
    }
}

/// Standard position of `triple` with the first entry at the origin,
/// translated to barycentric position.
pub fn barycentric_markov(triple: &MarkovTriple) -> Triangle<Rational> {
    let t = standard_triangle(&StandardPositionSpec::new(triple.clone(), 0)).expect("valid triple");
    to_barycentric(&t).expect("Markov triangles have a barycentre")
}

fn barycentric_period_three(p: &ClaimParams) -> ClaimReport {
    let t_max = p.t_max.unwrap_or(60);
    let triples = [(1, 1, 1), (1, 2, 1), (1, 5, 2), (2, 5, 29)]
        .map(|(a, b, c)| MarkovTriple::new(a, b, c).expect("Markov"));
    let tris: Vec<_> = triples.iter().map(barycentric_markov).collect();
    let mut checks = Vec::new();
    for (triple, t) in triples.iter().zip(&tris) {
        let check = match certify_minimal_period(t) {
            Ok(c) => Check::new(
                format!("period of {triple}"),
                c.period == 3,
                format!(
                    "certified period {} (denominator {})",
                    c.period, c.denominator
                ),
            ),
            Err(e) => Check::new(format!("period of {triple}"), false, e.to_string()),
        };
        checks.push(check);
    }
    for i in 0..tris.len() {
        for j in i + 1..tris.len() {
            let r = ehrhart_equivalent(&tris[i], &tris[j], t_max);
            checks.push(Check::new(
                format!("{} ~ {}", triples[i], triples[j]),
                r.equivalent,
                match r.divergence {
                    None => format!("equal counts for t <= {t_max}"),
                    Some(d) => format!("differ at t = {}: {} vs {}", d.t, d.left, d.right),
                },
            ));
        }
    }
    ClaimReport {
        claim: Claim::BarycentricPeriodThree,
        status: format!("periods certified; equivalence verified for t <= {t_max}"),
        checks,
    }
}

/// Standard `p₁`-position triangles of `tree(generations)`, over every choice
/// of apex, whose denominator is at most `max_den`.
pub fn standard_positions(
    generations: usize,
    max_den: u64,
) -> Vec<(StandardPositionSpec, Triangle<Rational>)> {
    let cap = BigInt::from(max_den);
    let mut out = Vec::new();
    for node in tree(generations) {
        for apex in 0..3 {
            let spec = StandardPositionSpec::new(node.triple.clone(), apex);
            let t = standard_triangle(&spec).expect("valid");
            if denominator(&t) <= cap {
                out.push((spec, t));
            }
        }
    }
    out
}

fn fibonacci_checks() -> Vec<Check> {
    let spec = LimitSpec::new(1, 1);
    (1..=4)
        .map(|n| {
            let t = sequence_triangle(&spec, n).expect("valid");
            let name = format!("Fibonacci triangle {n}");
            match certify_minimal_period(&t) {
                Ok(c) => Check::new(
                    name,
                    c.period == 1,
                    format!("certified period {}", c.period),
                ),
                Err(e) => Check::new(name, false, e.to_string()),
            }
        })
        .collect()
}

fn standard_period_divides_apex() -> ClaimReport {
    let mut checks = Vec::new();
    for (spec, t) in standard_positions(4, DEFAULT_DEN_CAP) {
        let [p1, _, _] = spec.ordered();
        let name = format!("{} with p1 = {p1}", spec.triple);
        checks.push(match certify_minimal_period(&t) {
            Ok(c) => Check::new(
                name,
                p1.is_multiple_of(&BigInt::from(c.period)),
                format!(
                    "certified period {} (denominator {})",
                    c.period, c.denominator
                ),
            ),
            Err(e) => Check::new(name, false, e.to_string()),
        });
    }
    checks.extend(fibonacci_checks());
    ClaimReport {
        claim: Claim::StandardPeriodDividesApex,
        status: "certified".into(),
        checks,
    }
}

fn standard_dilate_pseudo_integral() -> ClaimReport {
    let mut checks = Vec::new();
    for (spec, t) in standard_positions(4, DEFAULT_DEN_CAP) {
        let [p1, _, _] = spec.ordered();
        let name = format!("{p1} x {} with p1 = {p1}", spec.triple);
        let dilated = t
            .dilate(&Rational::from_integer(p1.clone()))
            .expect("positive scale");
        checks.push(match certify_minimal_period(&dilated) {
            Ok(c) => Check::new(
                name,
                c.period == 1,
                format!(
                    "certified period {} (denominator {})",
                    c.period, c.denominator
                ),
            ),
            Err(e) => Check::new(name, false, e.to_string()),
        });
    }
    checks.extend(fibonacci_checks());
    ClaimReport {
        claim: Claim::StandardDilatePseudoIntegral,
        status: "certified".into(),
        checks,
    }
}

fn two_position_period_two() -> ClaimReport {
    let mut checks = Vec::new();
    let proof = Triangle::from_points(
        Point2::new(rat(0, 1), rat(0, 1)),
        Point2::new(rat(1, 2), rat(2, 1)),
        Point2::new(rat(1, 2), rat(0, 1)),
    )
    .expect("nondegenerate");
    checks.push(match certify_minimal_period(&proof) {
        Ok(c) => Check::new(
            "(0,0), (1/2,2), (1/2,0)",
            c.period == 2,
            format!("certified period {}", c.period),
        ),
        Err(e) => Check::new("(0,0), (1/2,2), (1/2,0)", false, e.to_string()),
    });
    for (spec, t) in standard_positions(6, DEFAULT_DEN_CAP) {
        if spec.ordered()[0] != BigInt::from(2) {
            continue;
        }
        let name = format!("{} in standard 2-position", spec.triple);
        checks.push(match certify_minimal_period(&t) {
            Ok(c) => Check::new(
                name,
                c.period == 2,
                format!("certified period {}", c.period),
            ),
            Err(e) => Check::new(name, false, e.to_string()),
        });
    }
    ClaimReport {
        claim: Claim::TwoPositionPeriodTwo,
        status: "certified".into(),
        checks,
    }
}

fn limit_pseudo_rational(p: &ClaimParams) -> ClaimReport {
    let t_max = p.t_max.unwrap_or(40);
    let mut checks = Vec::new();
    for a in p.a_or(&[1, 2, 5]) {
        let spec = LimitSpec::new(a, 1);
        let ar = Rational::from_integer(BigInt::from(a));
        let built = limit_triangle(&spec).and_then(|lim| Ok((lim, sequence_triangle(&spec, 10)?)));
        let (lim, seq) = match built {
            Ok(x) => x,
            Err(e) => {
                checks.push(Check::new(format!("a = {a}"), false, e.to_string()));
                continue;
            }
        };
        let lim_a = lim.dilate(&ar).expect("positive scale");
        let seq_a = seq.dilate(&ar).expect("positive scale");
        let r = ehrhart_equivalent(&lim_a, &seq_a, t_max);
        checks.push(Check::new(
            format!("a = {a}: a-dilates of limit and 10th branch triangle"),
            r.equivalent,
            match r.divergence {
                None => format!("equal counts for t <= {t_max}"),
                Some(d) => format!("differ at t = {}: {} vs {}", d.t, d.left, d.right),
            },
        ));
        let rep = verify_period_on_range(&lim_a, 1, t_max).expect("enough samples");
        checks.push(Check::new(
            format!("a = {a}: a-dilate of the limit triangle is polynomial"),
            rep.passed,
            match rep.divergence {
                None => format!("one polynomial fits all t <= {t_max}"),
                Some(d) => format!("fails at t = {}", d.t),
            },
        ));
    }
    ClaimReport {
        claim: Claim::LimitPseudoRational,
        status: format!("verified for t <= {t_max}"),
        checks,
    }
}

fn barycentric_limit_pseudo_integral(p: &ClaimParams) -> ClaimReport {
    let t_max = p.t_max.unwrap_or(40);
    let mut checks = Vec::new();
    for a in p.a_or(&[1, 2]) {
        let spec = LimitSpec::new(a, 1).barycentric(true);
        let name = format!("a = {a}: 3 x barycentric limit triangle");
        let check = match limit_triangle(&spec) {
            Ok(lim) => {
                let three = lim.dilate(&rat(3, 1)).expect("positive scale");
                match verify_period_on_range(&three, 1, t_max) {
                    Ok(rep) => Check::new(
                        name,
                        rep.passed,
                        match rep.divergence {
                            None => format!("one polynomial fits all t <= {t_max}"),
                            Some(d) => format!("fails at t = {}", d.t),
                        },
                    ),
                    Err(e) => Check::new(name, false, e.to_string()),
                }
            }
            Err(e) => Check::new(name, false, e.to_string()),
        };
        checks.push(check);
    }
    ClaimReport {
        claim: Claim::BarycentricLimitPseudoIntegral,
        status: format!("verified for t <= {t_max}"),
        checks,
    }
}

fn mutation_preserves_barycentre(p: &ClaimParams) -> ClaimReport {
    let walks = p.trials.unwrap_or(200);
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let starts: Vec<Triangle<Rational>> = tree(4)
        .iter()
        .map(|n| standard_triangle(&StandardPositionSpec::new(n.triple.clone(), 0)).expect("valid"))
        .collect();
    let mut failures = Vec::new();
    for w in 0..walks {
        let mut t = starts[rng.gen_range(0..starts.len())].clone();
        let beta = integral_barycentre(&t).expect("Markov triangle");
        let len = rng.gen_range(1..=8);
        for step in 0..len {
            match geometric_mutation(&t, rng.gen_range(0..3)) {
                Ok(m) => t = m,
                Err(e) => {
                    failures.push(format!("walk {w} step {step}: {e}"));
                    break;
                }
            }
            if integral_barycentre(&t).ok().as_ref() != Some(&beta) {
                failures.push(format!("walk {w} step {step}: barycentre moved"));
                break;
            }
        }
    }
    ClaimReport {
        claim: Claim::MutationPreservesBarycentre,
        status: "exact".into(),
        checks: vec![Check::new(
            format!("{walks} random mutation walks of length <= 8"),
            failures.is_empty(),
            if failures.is_empty() {
                "barycentre unchanged at every step".to_string()
            } else {
                failures.join("; ")
            },
        )],
    }
}

/// `hausdorff_distance_sq_upper(Δₙ, Δ_∞)` for `n = 1..=n_max`.
pub fn hausdorff_profile(a: u64, n_max: usize) -> Vec<QuadElem> {
    let spec = LimitSpec::new(a, 1);
    let lim = limit_triangle(&spec).expect("valid");
    let d = lagrange_discriminant(&BigInt::from(a));
    (1..=n_max)
        .map(|n| {
            let t = sequence_triangle(&spec, n)
                .expect("valid")
                .embed_quadratic(&d)
                .expect("valid discriminant");
            hausdorff_distance_sq_upper(&t, &lim)
        })
        .collect()
}

/// Floating-point value of `r + s·√d` computed as `(r² − s²d)/(r − s·√d)`,
/// which stays accurate when the two terms nearly cancel.
fn approx_small(x: &QuadElem) -> f64 {
    let (r, s) = x.parts();
    let d = Rational::from_integer(x.discriminant().clone());
    let num = &r * &r - &s * &s * &d;
    let den = Scalar::to_f64(&r) - Scalar::to_f64(&s) * Scalar::to_f64(&d).sqrt();
    if den == 0.0 {
        x.to_f64()
    } else {
        Scalar::to_f64(&num) / den
    }
}

fn hausdorff_convergence(p: &ClaimParams) -> ClaimReport {
    let threshold = Rational::new(BigInt::one(), BigInt::from(10u64).pow(12));
    let mut checks = Vec::new();
    for a in p.a_or(&[1, 2, 5]) {
        let prof = hausdorff_profile(a, 10);
        let decreasing = prof.windows(2).all(|w| quad_sign(&(&w[0] - &w[1])) > 0);
        let last = prof.last().expect("ten terms");
        let small = quad_sign(&last.add_rational(&-threshold.clone())) < 0;
        checks.push(Check::new(
            format!("a = {a}"),
            decreasing && small,
            format!(
                "strictly decreasing: {decreasing}; distance at n = 10 ≈ {:.3e} (approximate)",
                approx_small(last).sqrt()
            ),
        ));
    }
    ClaimReport {
        claim: Claim::HausdorffConvergence,
        status: "exact comparisons".into(),
        checks,
    }
}

/// Number of points `(k/N, m/N)` with `1 ≤ N ≤ n_max`, `|k|, |m| ≤ bound`
/// lying on the line through the two irrational vertices of the limit
/// triangle, and whether `β = (q/(3a), 1/3)` lies on it.
pub fn rational_points_on_limit_edge(
    a: u64,
    q: i64,
    n_max: i64,
    bound: i64,
) -> (bool, Vec<(Rational, Rational)>) {
    let lim = limit_triangle(&LimitSpec::new(a, q)).expect("valid");
    let idx = (0..3)
        .find(|&i| lim.vertex(i).label.is_none() && lim.vertex(i + 1).label.is_none())
        .expect("two unlabeled vertices");
    let b = lim.point(idx).clone();
    let e = lim.point(idx + 1).minus(&b);
    let on_line = |x: &Rational, y: &Rational| {
        let p = Point2::new(b.x.embed(x), b.x.embed(y));
        det(&e, &p.minus(&b)).is_zero_value()
    };
    let beta_on = on_line(
        &Rational::new(BigInt::from(q), BigInt::from(3 * a)),
        &rat(1, 3),
    );
    // det(e, X − b) = α·x + β·y − γ with α, β, γ in Q(√d); a rational point
    // satisfies it iff both the rational and the irrational parts vanish.
    let (ex, ey) = (e.x.clone(), e.y.clone());
    let gamma = ex.times(&b.y).minus(&ey.times(&b.x));
    let (ar, ai) = ey.negated().parts();
    let (br, bi) = ex.parts();
    let (gr, gi) = gamma.parts();
    let lcm = [&ar, &ai, &br, &bi, &gr, &gi]
        .iter()
        .fold(BigInt::one(), |l, r| l.lcm(r.denom()));
    let int = |r: &Rational| (r * Rational::from_integer(lcm.clone())).to_integer();
    let (a1, a2, b1, b2, g1, g2) = (int(&ar), int(&ai), int(&br), int(&bi), int(&gr), int(&gi));
    let mut hits = Vec::new();
    for n in 1..=n_max {
        let nb = BigInt::from(n);
        let (g1n, g2n) = (&g1 * &nb, &g2 * &nb);
        for k in -bound..=bound {
            let kb = BigInt::from(k);
            let (r1, r2) = (&g1n - &a1 * &kb, &g2n - &a2 * &kb);
            for m in -bound..=bound {
                let mb = BigInt::from(m);
                if &b1 * &mb == r1 && &b2 * &mb == r2 {
                    hits.push((
                        Rational::new(kb.clone(), nb.clone()),
                        Rational::new(mb, nb.clone()),
                    ));
                }
            }
        }
    }
    hits.sort();
    hits.dedup();
    (beta_on, hits)
}

fn barycentre_on_limit_edge(p: &ClaimParams) -> ClaimReport {
    let mut checks = Vec::new();
    for a in p.a_or(&[1, 2, 5, 13]) {
        let (beta_on, hits) = rational_points_on_limit_edge(a, 1, 30, 300);
        let beta = (Rational::new(BigInt::one(), BigInt::from(3 * a)), rat(1, 3));
        let only_beta = hits.iter().all(|h| *h == beta);
        checks.push(Check::new(
            format!("a = {a}"),
            beta_on && only_beta,
            format!(
                "barycentre on line: {beta_on}; rational points found with N <= 30, |k|,|m| <= 300: {}",
                hits.iter()
                    .map(|(x, y)| format!("({x}, {y})"))
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        ));
    }
    ClaimReport {
        claim: Claim::BarycentreOnLimitEdge,
        status: "exact".into(),
        checks,
    }
}
