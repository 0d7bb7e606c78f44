//! Seeded randomized verification of the Schwarz-Pick inequalities and the
//! statements they rest on.
//!
//! Every suite splits its samples into batches of [`BATCH_SIZE`]. Batch `b` of
//! suite `s` draws from `ChaCha8Rng::seed_from_u64(seed)` on stream
//! `(s << 32) | b`, batches run in parallel and are merged in batch order, so
//! reports depend only on the seed and the sample count.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fractional::{self, QuaternionMatrix2};
use crate::geometry;
use crate::quaternion::Quaternion;
use crate::rational::RegularQuotient;
use crate::series::RegularPolynomial;
use crate::tolerance::Tolerances;

pub const BATCH_SIZE: usize = 100;
pub const DEFAULT_SAMPLES: usize = 10_000;
/// Sampled points stay inside this radius.
pub const SAMPLE_RADIUS: f64 = 0.99;
/// Allowed deviation in the equality cases of regular Moebius inputs.
pub const EQUALITY: f64 = 1e-8;
/// Step and threshold of the finite-difference regularity test.
pub const FD_STEP: f64 = 1e-5;
pub const FD_THRESHOLD: f64 = 1e-5;
const MAX_DEGREE: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleConfig {
    pub seed: u64,
    pub samples: usize,
    pub tolerances: Tolerances,
}

impl SampleConfig {
    pub fn new(seed: u64, samples: usize) -> Self {
        SampleConfig { seed, samples, tolerances: Tolerances::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    /// `lhs <= rhs`; the margin is `rhs - lhs`.
    Inequality,
    /// `lhs = rhs`; the margin is `|lhs - rhs|`.
    Equality,
}

/// Where a property came closest to failing.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub property: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub function: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q0: Option<Quaternion>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<Quaternion>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyResult {
    pub name: String,
    pub kind: CheckKind,
    pub samples: usize,
    pub violations: usize,
    /// Smallest `rhs - lhs` for inequalities, largest `|lhs - rhs|` for equalities.
    pub worst_margin: f64,
    pub pass: bool,
    pub witness: Witness,
}

impl PropertyResult {
    fn new(name: &str, kind: CheckKind) -> Self {
        PropertyResult {
            name: name.to_string(),
            kind,
            samples: 0,
            violations: 0,
            worst_margin: match kind {
                CheckKind::Inequality => f64::INFINITY,
                CheckKind::Equality => 0.0,
            },
            pass: true,
            witness: Witness::default(),
        }
    }

    fn is_worse(&self, margin: f64) -> bool {
        match self.kind {
            CheckKind::Inequality => margin < self.worst_margin,
            CheckKind::Equality => margin > self.worst_margin,
        }
    }

    fn merge(&mut self, other: PropertyResult) {
        self.samples += other.samples;
        self.violations += other.violations;
        self.pass = self.violations == 0;
        if other.samples > 0 && self.is_worse(other.worst_margin) {
            self.worst_margin = other.worst_margin;
            self.witness = other.witness;
        }
    }
}

/// Function and center shared by the samples of one instance.
#[derive(Clone, Debug, Default)]
struct Context {
    function: String,
    q0: Option<Quaternion>,
}

/// Ordered collection of property accumulators.
#[derive(Clone, Debug, Default)]
struct Properties {
    items: Vec<PropertyResult>,
    inequality_tol: f64,
}

impl Properties {
    fn new(tolerances: &Tolerances) -> Self {
        Properties { items: Vec::new(), inequality_tol: tolerances.inequality }
    }

    fn entry(&mut self, name: &str, kind: CheckKind) -> &mut PropertyResult {
        let pos = match self.items.iter().position(|p| p.name == name) {
            Some(pos) => pos,
            None => {
                self.items.push(PropertyResult::new(name, kind));
                self.items.len() - 1
            }
        };
        &mut self.items[pos]
    }

    #[allow(clippy::too_many_arguments)]
    fn record(&mut self, name: &str, kind: CheckKind, margin: f64, violated: bool, ctx: &Context, q: Option<Quaternion>, lhs: f64, rhs: f64) {
        let prop = self.entry(name, kind);
        prop.samples += 1;
        if violated {
            prop.violations += 1;
            prop.pass = false;
        }
        if prop.is_worse(margin) || (margin.is_nan() && prop.witness.lhs.is_none()) {
            prop.worst_margin = margin;
            prop.witness = Witness {
                property: Some(name.to_string()),
                function: Some(ctx.function.clone()),
                q0: ctx.q0,
                q,
                lhs: Some(lhs),
                rhs: Some(rhs),
                error: None,
            };
        }
    }

    /// `lhs <= rhs`, violated when `rhs - lhs < -tol (1 + |rhs|)`.
    fn inequality(&mut self, name: &str, ctx: &Context, q: Option<Quaternion>, lhs: f64, rhs: f64) {
        let margin = rhs - lhs;
        let violated = !(margin >= -self.inequality_tol * (1.0 + rhs.abs()));
        self.record(name, CheckKind::Inequality, margin, violated, ctx, q, lhs, rhs);
    }

    /// `|lhs - rhs| <= allowed`.
    fn equality(&mut self, name: &str, ctx: &Context, q: Option<Quaternion>, lhs: f64, rhs: f64, allowed: f64) {
        let margin = (lhs - rhs).abs();
        let violated = !(margin <= allowed);
        self.record(name, CheckKind::Equality, margin, violated, ctx, q, lhs, rhs);
    }

    fn error(&mut self, ctx: &Context, err: &Error) {
        let prop = self.entry("evaluation", CheckKind::Equality);
        prop.samples += 1;
        prop.violations += 1;
        prop.pass = false;
        if prop.witness.error.is_none() {
            prop.witness = Witness {
                property: Some("evaluation".into()),
                function: Some(ctx.function.clone()),
                q0: ctx.q0,
                error: Some(err.to_string()),
                ..Witness::default()
            };
        }
    }

    fn merge(&mut self, other: Properties) {
        for prop in other.items {
            match self.items.iter_mut().find(|p| p.name == prop.name) {
                Some(existing) => existing.merge(prop),
                None => self.items.push(prop),
            }
        }
    }
}

/// Outcome of one suite.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub samples: usize,
    pub pass: bool,
    /// Smallest inequality margin over all properties.
    pub worst_margin: f64,
    pub witness: Witness,
    pub properties: Vec<PropertyResult>,
}

impl VerificationReport {
    fn from_properties(suite: &str, seed: u64, samples: usize, props: Properties) -> Self {
        let pass = props.items.iter().all(|p| p.pass);
        let worst = props
            .items
            .iter()
            .filter(|p| p.kind == CheckKind::Inequality && p.samples > 0)
            .fold(None::<&PropertyResult>, |best, p| match best {
                Some(b) if b.worst_margin <= p.worst_margin => Some(b),
                _ => Some(p),
            });
        let failed = props.items.iter().find(|p| !p.pass);
        let witness = failed.or(worst).map(|p| p.witness.clone()).unwrap_or_default();
        VerificationReport {
            suite: suite.to_string(),
            seed,
            samples,
            pass,
            worst_margin: worst.map_or(0.0, |p| p.worst_margin),
            witness,
            properties: props.items,
        }
    }

    pub fn property(&self, name: &str) -> Option<&PropertyResult> {
        self.properties.iter().find(|p| p.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// All suites run together.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AggregateReport {
    pub suite: String,
    pub seed: u64,
    pub samples: usize,
    pub pass: bool,
    pub worst_margin: f64,
    pub suites: Vec<VerificationReport>,
}

impl AggregateReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    SchwarzPick,
    ZeroCase,
    ModulusProduct,
    RegPreservation,
    SliceRegularity,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::SchwarzPick,
        Suite::ZeroCase,
        Suite::ModulusProduct,
        Suite::RegPreservation,
        Suite::SliceRegularity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::SchwarzPick => "schwarz-pick",
            Suite::ZeroCase => "zero-case",
            Suite::ModulusProduct => "modulus-product",
            Suite::RegPreservation => "reg-preservation",
            Suite::SliceRegularity => "slice-regularity",
        }
    }

    fn index(self) -> u64 {
        Suite::ALL.iter().position(|&s| s == self).unwrap() as u64 + 1
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite '{s}'")))
    }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform point of the 4-ball of radius `radius`, by rejection from the cube.
pub fn sample_ball<R: Rng>(rng: &mut R, radius: f64) -> Quaternion {
    loop {
        let p = Quaternion::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        if p.norm_sqr() < 1.0 {
            return p * radius;
        }
    }
}

/// Uniform point of the unit 3-sphere.
pub fn sample_unit<R: Rng>(rng: &mut R) -> Quaternion {
    loop {
        let p = sample_ball(rng, 1.0);
        let n = p.norm();
        if n > 1e-3 {
            return p / n;
        }
    }
}

/// Uniform unit imaginary quaternion.
pub fn sample_imaginary_unit<R: Rng>(rng: &mut R) -> Quaternion {
    loop {
        let p = Quaternion::new(0.0, rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let n = p.norm();
        if n > 1e-3 && n < 1.0 {
            return p / n;
        }
    }
}

fn sample_points<R: Rng>(rng: &mut R, count: usize) -> Vec<Quaternion> {
    (0..count).map(|_| sample_ball(rng, SAMPLE_RADIUS)).collect()
}

/// Coefficients drawn from the cube, rescaled so `sum |a_n|` lies in `[0.5, 1 - 1e-6)`.
pub fn random_self_map_with<R: Rng>(rng: &mut R, degree: usize) -> RegularPolynomial {
    let coeffs: Vec<Quaternion> = (0..=degree).map(|_| sample_ball(rng, 1.0)).collect();
    let target = rng.gen_range(0.5..1.0 - 1e-6);
    let total: f64 = coeffs.iter().map(|c| c.norm()).sum();
    let scale = if total > 0.0 { target / total } else { 0.0 };
    RegularPolynomial::new(coeffs.into_iter().map(|c| c * scale).collect())
}

/// A polynomial with `sum |a_n| < 1`, hence mapping the ball into itself.
pub fn random_self_map(seed: u64, degree: usize) -> RegularPolynomial {
    random_self_map_with(&mut rng_for(seed, 0), degree)
}

/// `from_normal_form` on a random center of modulus below 0.9 and a random unit.
pub fn random_sp11<R: Rng>(rng: &mut R) -> QuaternionMatrix2 {
    fractional::from_normal_form(sample_ball(rng, 0.9), sample_unit(rng)).expect("center inside the ball")
}

fn context(f: &impl fmt::Display, q0: Option<Quaternion>) -> Context {
    Context { function: f.to_string(), q0 }
}

/// Single-instance checks draw their points from a dedicated stream.
const INSTANCE_STREAM: u64 = u64::MAX;

fn single_instance<F>(suite: &str, cfg: &SampleConfig, run: F) -> Result<VerificationReport>
where
    F: FnOnce(&mut Properties, &[Quaternion]) -> Result<()>,
{
    let mut rng = rng_for(cfg.seed, INSTANCE_STREAM);
    let points = sample_points(&mut rng, cfg.samples);
    let mut props = Properties::new(&cfg.tolerances);
    run(&mut props, &points)?;
    Ok(VerificationReport::from_properties(suite, cfg.seed, cfg.samples, props))
}

/// Pieces of the Schwarz-Pick inequalities for `f` at `q0`.
///
/// With `f = D^{-1} N` (`D` real) and `c = f(q0)`:
/// `Phi = (f - c) * (1 - conj(c) * f)^{-*} = (N - Dc) * (D - conj(c) N)^{-*}`.
struct SchwarzPickData {
    phi: crate::rational::QuotientEvaluator,
    remainder: RegularQuotient,
    moebius: crate::rational::QuotientEvaluator,
    reciprocal: crate::rational::QuotientEvaluator,
}

impl SchwarzPickData {
    fn new(f: &RegularQuotient, q0: Quaternion) -> Result<Self> {
        geometry::check_in_ball(q0)?;
        let (d, n) = f.central_form();
        let c = f.evaluate(q0)?;
        let e = &d - &n.left_scale(c.conj());
        let phi = RegularQuotient::right(&n - &d.right_scale(c), e)?;
        let remainder = phi.remainder(q0)?;
        let moebius = geometry::regular_moebius_right(q0, Quaternion::ONE)?.evaluator();
        let reciprocal =
            RegularQuotient::reciprocal_of(RegularPolynomial::linear(-q0.conj(), Quaternion::ONE))?.evaluator();
        Ok(SchwarzPickData { phi: phi.evaluator(), remainder, moebius, reciprocal })
    }
}

fn schwarz_pick_instance(props: &mut Properties, f: &RegularQuotient, q0: Quaternion, points: &[Quaternion], moebius_input: bool) -> Result<()> {
    let ctx = context(f, Some(q0));
    let data = SchwarzPickData::new(f, q0)?;
    let rem = data.remainder.evaluator();
    for &q in points {
        let lhs_point = data.phi.evaluate(q)?.norm();
        let rhs_point = data.moebius.evaluate(q)?.norm();
        props.inequality("pointwise-bound", &ctx, Some(q), lhs_point, rhs_point);
        let lhs_rem = rem.evaluate(q)?.norm();
        let rhs_rem = data.reciprocal.evaluate(q)?.norm();
        props.inequality("remainder-bound", &ctx, Some(q), lhs_rem, rhs_rem);
        if moebius_input {
            props.equality("pointwise-moebius-equality", &ctx, Some(q), lhs_point, rhs_point, EQUALITY);
            props.equality("remainder-moebius-equality", &ctx, Some(q), lhs_rem, rhs_rem, EQUALITY);
        }
    }
    let lhs_der = rem.evaluate(q0)?.norm();
    let rhs_der = 1.0 / (1.0 - q0.norm_sqr());
    props.inequality("derivative-bound", &ctx, Some(q0), lhs_der, rhs_der);
    if moebius_input {
        props.equality("derivative-moebius-equality", &ctx, Some(q0), lhs_der, rhs_der, EQUALITY);
    }
    if f.den().degree() == Some(0) {
        // polynomial f: dc f * (1 - conj(c) * f)^{-*} at q0
        let poly = f.central_form();
        let g = poly.1.left_scale(poly.0.coeff(0).inverse()?);
        let c = g.evaluate(q0);
        let one_minus = &RegularPolynomial::one() - &g.left_scale(c.conj());
        let derivative = RegularQuotient::polynomial(g.cullen_derivative()).star(&RegularQuotient::reciprocal_of(one_minus)?);
        let direct = derivative.evaluate(q0)?.norm();
        let allowed = 1e-9 * (1.0 + lhs_der);
        props.equality("derivative-route-agreement", &ctx, Some(q0), direct, lhs_der, allowed);
    }
    Ok(())
}

/// Evaluates the three Schwarz-Pick inequalities for `f` at `q0` on
/// `cfg.samples` points of the ball. `f` must map the ball into itself.
pub fn check_schwarz_pick(f: &RegularQuotient, q0: Quaternion, cfg: &SampleConfig) -> Result<VerificationReport> {
    single_instance(Suite::SchwarzPick.name(), cfg, |props, points| {
        schwarz_pick_instance(props, f, q0, points, false)
    })
}

/// As [`check_schwarz_pick`], additionally requiring equality in all three
/// inequalities (the regular Moebius case).
pub fn check_schwarz_pick_equality(f: &RegularQuotient, q0: Quaternion, cfg: &SampleConfig) -> Result<VerificationReport> {
    single_instance(Suite::SchwarzPick.name(), cfg, |props, points| {
        schwarz_pick_instance(props, f, q0, points, true)
    })
}

fn zero_case_instance(props: &mut Properties, f: &RegularQuotient, q0: Quaternion, points: &[Quaternion], unit_quotient: bool) -> Result<()> {
    geometry::check_in_ball(q0)?;
    let value = f.evaluate(q0)?;
    if value.norm() > 1e-9 {
        return Err(Error::InvalidParameter(format!("f(q0) = {value} is not zero")));
    }
    let ctx = context(f, Some(q0));
    // ML_{q0}^{-*} * f = (1 - q conj(q0)) * R_{q0} f
    let remainder = f.remainder(q0)?;
    let factor = RegularQuotient::polynomial(RegularPolynomial::linear(-q0.conj(), Quaternion::ONE));
    let quotient = factor.star(&remainder).evaluator();
    for &q in points {
        let lhs = quotient.evaluate(q)?.norm();
        props.inequality("quotient-bound", &ctx, Some(q), lhs, 1.0);
        if unit_quotient {
            props.equality("moebius-quotient-unit", &ctx, Some(q), lhs, 1.0, EQUALITY);
        }
    }
    let cullen = remainder.evaluate(q0)?.norm();
    props.inequality("cullen-bound", &ctx, Some(q0), cullen, 1.0 / (1.0 - q0.norm_sqr()));
    if !q0.is_real(crate::tolerance::REAL_AXIS) {
        let spherical = ((q0.im() * 2.0).inverse()? * (f.evaluate(q0)? - f.evaluate(q0.conj())?)).norm();
        let bound = 1.0 / (Quaternion::ONE - q0.conj() * q0.conj()).norm();
        props.inequality("spherical-bound", &ctx, Some(q0), spherical, bound);
    }
    Ok(())
}

/// Checks `|ML_{q0}^{-*} * f| <= 1` on samples together with the bounds on
/// the Cullen and spherical derivatives at `q0`. Requires `f(q0) = 0`.
pub fn check_zero_case(f: &RegularQuotient, q0: Quaternion, cfg: &SampleConfig) -> Result<VerificationReport> {
    single_instance(Suite::ZeroCase.name(), cfg, |props, points| {
        zero_case_instance(props, f, q0, points, false)
    })
}

fn modulus_product_instance(props: &mut Properties, h: &RegularPolynomial, f: &RegularPolynomial, g: &RegularPolynomial, points: &[Quaternion], equal: bool) {
    let ctx = Context { function: format!("h = {h}; f = {f}; g = {g}"), q0: None };
    let (hf, hg) = (h.star(f), h.star(g));
    for &q in points {
        props.inequality("premise", &ctx, Some(q), f.evaluate(q).norm(), g.evaluate(q).norm());
        let (lhs, rhs) = (hf.evaluate(q).norm(), hg.evaluate(q).norm());
        props.inequality("product", &ctx, Some(q), lhs, rhs);
        if equal {
            props.equality("equal-factors", &ctx, Some(q), lhs, rhs, 1e-12 * (1.0 + rhs));
        }
    }
}

/// Checks `|f| <= |g|` and then `|h*f| <= |h*g|` on samples.
pub fn check_modulus_product(h: &RegularPolynomial, f: &RegularPolynomial, g: &RegularPolynomial, cfg: &SampleConfig) -> VerificationReport {
    single_instance(Suite::ModulusProduct.name(), cfg, |props, points| {
        modulus_product_instance(props, h, f, g, points, false);
        Ok(())
    })
    .expect("polynomial evaluation does not fail")
}

fn reg_preservation_instance(props: &mut Properties, f: &RegularQuotient, m: &QuaternionMatrix2, points: &[Quaternion]) -> Result<()> {
    let ctx = Context { function: format!("{f}; A = {}", serde_json::to_string(m).unwrap_or_default()), q0: None };
    if !m.is_sp11(crate::tolerance::SP11) {
        return Err(Error::NotSp11(m.sp11_defect()));
    }
    let right = fractional::right_action(f, m)?.evaluator();
    let left = fractional::left_action(&m.transpose(), f)?.evaluator();
    let conj = f.conjugate().evaluator();
    for &q in points {
        props.inequality("right-action", &ctx, Some(q), right.evaluate(q)?.norm(), 1.0);
        props.inequality("left-action", &ctx, Some(q), left.evaluate(q)?.norm(), 1.0);
        props.inequality("conjugate", &ctx, Some(q), conj.evaluate(q)?.norm(), 1.0);
    }
    Ok(())
}

/// Samples `|f.A|`, `|A.f|` (the left action of `A`) and `|f^c|`, all of which
/// must stay below 1 when `f` maps the ball into itself and `A` is in `Sp(1,1)`.
pub fn check_reg_preservation(f: &RegularQuotient, m: &QuaternionMatrix2, cfg: &SampleConfig) -> Result<VerificationReport> {
    single_instance(Suite::RegPreservation.name(), cfg, |props, points| {
        reg_preservation_instance(props, f, m, points)
    })
}

/// `|(1/2)(d/dx + I d/dy) f|` at `p = x + yI` by central differences.
pub fn cauchy_riemann_residual<F>(f: &F, p: Quaternion, unit: Quaternion) -> Result<Quaternion>
where
    F: Fn(Quaternion) -> Result<Quaternion>,
{
    let h = FD_STEP;
    let dx = (f(p + Quaternion::real(h))? - f(p - Quaternion::real(h))?) / (2.0 * h);
    let dy = (f(p + unit * h)? - f(p - unit * h)?) / (2.0 * h);
    Ok((dx + unit * dy) * 0.5)
}

fn slice_regularity_instance<F, R>(props: &mut Properties, f: &F, ctx: &Context, rng: &mut R, count: usize) -> Result<()>
where
    F: Fn(Quaternion) -> Result<Quaternion>,
    R: Rng,
{
    for _ in 0..count {
        let p = sample_ball(rng, SAMPLE_RADIUS - 2.0 * FD_STEP);
        let unit = if p.is_real(crate::tolerance::REAL_AXIS) { sample_imaginary_unit(rng) } else { p.slice_decompose().unit };
        let residual = cauchy_riemann_residual(f, p, unit)?.norm();
        props.inequality("cauchy-riemann", ctx, Some(p), residual, FD_THRESHOLD);
    }
    Ok(())
}

/// Finite-difference test of slice regularity for an arbitrary function.
pub fn check_slice_regularity<F>(f: F, label: &str, cfg: &SampleConfig) -> Result<VerificationReport>
where
    F: Fn(Quaternion) -> Result<Quaternion>,
{
    let mut rng = rng_for(cfg.seed, INSTANCE_STREAM);
    let mut props = Properties::new(&cfg.tolerances);
    let ctx = Context { function: label.to_string(), q0: None };
    slice_regularity_instance(&mut props, &f, &ctx, &mut rng, cfg.samples)?;
    Ok(VerificationReport::from_properties(Suite::SliceRegularity.name(), cfg.seed, cfg.samples, props))
}

/// A random self-map of the ball: a polynomial, the right action of a random
/// `Sp(1,1)` matrix on one, or a regular Moebius map when `moebius` is set.
fn random_quotient_self_map<R: Rng>(rng: &mut R, batch: usize, moebius: bool) -> RegularQuotient {
    if moebius {
        let (a, u) = (sample_ball(rng, 0.9), sample_unit(rng));
        return geometry::regular_moebius_right(a, u).expect("center inside the ball");
    }
    let degree = rng.gen_range(0..=MAX_DEGREE);
    let g = RegularQuotient::polynomial(random_self_map_with(rng, degree));
    if batch % 4 == 2 {
        let m = random_sp11(rng);
        fractional::right_action(&g, &m).unwrap_or(g)
    } else {
        g
    }
}

fn run_batch(suite: Suite, cfg: &SampleConfig, batch: usize, count: usize) -> Properties {
    let mut rng = rng_for(cfg.seed, (suite.index() << 32) | batch as u64);
    let mut props = Properties::new(&cfg.tolerances);
    let moebius = batch % 4 == 3;
    let outcome = match suite {
        Suite::SchwarzPick => {
            let f = random_quotient_self_map(&mut rng, batch, moebius);
            let q0 = sample_ball(&mut rng, 0.95);
            let points = sample_points(&mut rng, count);
            schwarz_pick_instance(&mut props, &f, q0, &points, moebius).map_err(|e| (context(&f, Some(q0)), e))
        }
        Suite::ZeroCase => {
            let q0 = sample_ball(&mut rng, 0.95);
            let g = if moebius {
                RegularPolynomial::constant(sample_unit(&mut rng))
            } else {
                let degree = rng.gen_range(0..=MAX_DEGREE);
                random_self_map_with(&mut rng, degree)
            };
            let f = RegularQuotient::left(
                RegularPolynomial::linear(-q0.conj(), Quaternion::ONE),
                RegularPolynomial::linear(Quaternion::ONE, -q0).star(&g),
            )
            .expect("nonzero denominator");
            let points = sample_points(&mut rng, count);
            zero_case_instance(&mut props, &f, q0, &points, moebius).map_err(|e| (context(&f, Some(q0)), e))
        }
        Suite::ModulusProduct => {
            let h_degree = rng.gen_range(0..=4);
            let h = RegularPolynomial::new((0..=h_degree).map(|_| sample_ball(&mut rng, 2.0)).collect());
            let g_degree = rng.gen_range(0..=4);
            let g = random_self_map_with(&mut rng, g_degree);
            let (f, equal) = match batch % 3 {
                0 => (g.right_scale(sample_unit(&mut rng) * 0.9), false),
                1 => {
                    let k_degree = rng.gen_range(0..=3);
                    (g.star(&random_self_map_with(&mut rng, k_degree)), false)
                }
                _ => (g.clone(), true),
            };
            let points = sample_points(&mut rng, count);
            modulus_product_instance(&mut props, &h, &f, &g, &points, equal);
            Ok(())
        }
        Suite::RegPreservation => {
            let f = if batch.is_multiple_of(4) {
                RegularQuotient::polynomial(RegularPolynomial::identity())
            } else {
                let degree = rng.gen_range(0..=MAX_DEGREE);
                RegularQuotient::polynomial(random_self_map_with(&mut rng, degree))
            };
            let m = random_sp11(&mut rng);
            let points = sample_points(&mut rng, count);
            reg_preservation_instance(&mut props, &f, &m, &points).map_err(|e| (context(&f, None), e))
        }
        Suite::SliceRegularity => {
            let f = random_quotient_self_map(&mut rng, batch, moebius);
            let ctx = context(&f, None);
            let eval = f.evaluator();
            slice_regularity_instance(&mut props, &|q| eval.evaluate(q), &ctx, &mut rng, count).map_err(|e| (ctx, e))
        }
    };
    if let Err((ctx, err)) = outcome {
        props.error(&ctx, &err);
    }
    props
}

/// Runs one suite on `cfg.samples` random samples.
pub fn run_suite(suite: Suite, cfg: &SampleConfig) -> VerificationReport {
    let batches = cfg.samples.div_ceil(BATCH_SIZE);
    let results: Vec<Properties> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let count = BATCH_SIZE.min(cfg.samples - b * BATCH_SIZE);
            run_batch(suite, cfg, b, count)
        })
        .collect();
    let mut merged = Properties::new(&cfg.tolerances);
    for props in results {
        merged.merge(props);
    }
    VerificationReport::from_properties(suite.name(), cfg.seed, cfg.samples, merged)
}

/// Runs every suite; passes iff all of them pass.
pub fn verify_all(cfg: &SampleConfig) -> AggregateReport {
    let suites: Vec<VerificationReport> = Suite::ALL.iter().map(|&s| run_suite(s, cfg)).collect();
    let pass = suites.iter().all(|r| r.pass);
    let worst_margin = suites.iter().map(|r| r.worst_margin).fold(f64::INFINITY, f64::min);
    AggregateReport {
        suite: "all".into(),
        seed: cfg.seed,
        samples: cfg.samples,
        pass,
        worst_margin: if worst_margin.is_finite() { worst_margin } else { 0.0 },
        suites,
    }
}
