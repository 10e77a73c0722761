//! Seeded identity suites with JSON-lines reports.
//!
//! Every case draws its parameters from a stream keyed by `(seed, identity, case)`, so
//! reports do not depend on how cases are scheduled across threads.

use std::collections::BTreeMap;

use rand::Rng as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dser::{Generator, Word};
use crate::error::{Error, Result};
use crate::identities::{self as id, compare, Family, IdentityReport, NestedParams, NestedVariant, PairParams, Verdict};
use crate::local_global::{self as lg, Conjugator, DilationCase, Target};
use crate::matrix::Matrix;
use crate::quad_space::{AmbientSpace, Direction};
use crate::ring::{Field, Ring, Scalar};
use crate::sample::{self, Rng};

pub const IDENTITIES: [&str; 11] = [
    "membership",
    "splitting",
    "generation",
    "commutators",
    "scaling",
    "nested",
    "nested-scaling",
    "bridges",
    "eichler-props",
    "dilation",
    "telescope",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub ring: String,
    pub n_max: usize,
    pub m_max: usize,
    pub seed: u64,
    pub identities: Vec<String>,
    pub samples: usize,
    /// Adds one deliberately corrupted generator to the membership suite.
    #[serde(default)]
    pub inject_fault: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            ring: "QQ".into(),
            n_max: 3,
            m_max: 3,
            seed: 0,
            identities: IDENTITIES.iter().map(|s| s.to_string()).collect(),
            samples: 100,
            inject_fault: false,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<Ring> {
        for name in &self.identities {
            if !IDENTITIES.contains(&name.as_str()) {
                return Err(Error::Parse(format!("unknown identity `{name}`")));
            }
        }
        if self.n_max == 0 || self.m_max == 0 {
            return Err(Error::Parse("n_max and m_max must be at least 1".into()));
        }
        Ring::parse(&self.ring)
    }
}

/// Reports of one case plus measured (not asserted) observations.
#[derive(Clone, Debug, Default)]
struct CaseOutput {
    reports: Vec<IdentityReport>,
    measured: Vec<(String, bool)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub equal: usize,
    pub violated: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Measured {
    pub yes: usize,
    pub no: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub ring: String,
    pub seed: u64,
    pub samples: usize,
    pub total: usize,
    pub equal: usize,
    pub violated: usize,
    pub failed: usize,
    pub identities: BTreeMap<String, Tally>,
    pub measured: BTreeMap<String, Measured>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub reports: Vec<IdentityReport>,
    pub summary: Summary,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.summary.violated == 0 && self.summary.failed == 0
    }

    /// One report per line, then `{"summary": ...}`.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            out.push_str(&serde_json::to_string(r).expect("serializable"));
            out.push('\n');
        }
        let summary = serde_json::json!({ "summary": self.summary });
        out.push_str(&summary.to_string());
        out.push('\n');
        out
    }
}

pub fn run_suite(config: &SuiteConfig) -> Result<SuiteOutcome> {
    let ring = config.validate()?;
    let tasks: Vec<(&str, usize)> = IDENTITIES
        .iter()
        .filter(|name| config.identities.iter().any(|c| c == *name))
        .flat_map(|name| (0..config.samples).map(move |c| (*name, c)))
        .collect();
    let outputs: Vec<CaseOutput> = tasks
        .par_iter()
        .map(|&(name, case)| {
            let mut rng = sample::case_rng(config.seed, name, case);
            let seed = sample::case_seed(config.seed, name, case);
            let mut out = run_case(name, case, &ring, config, &mut rng);
            for r in &mut out.reports {
                r.case = case;
                r.seed = seed;
            }
            out
        })
        .collect();

    let mut reports = Vec::new();
    let mut measured: BTreeMap<String, Measured> = BTreeMap::new();
    for o in outputs {
        reports.extend(o.reports);
        for (k, v) in o.measured {
            let e = measured.entry(k).or_default();
            if v {
                e.yes += 1;
            } else {
                e.no += 1;
            }
        }
    }
    reports.sort_by(|a, b| a.identity.cmp(&b.identity).then(a.case.cmp(&b.case)));

    let mut identities: BTreeMap<String, Tally> = BTreeMap::new();
    for r in &reports {
        let t = identities.entry(r.identity.clone()).or_default();
        match r.verdict {
            Verdict::Equal => t.equal += 1,
            Verdict::Violated { .. } => t.violated += 1,
            Verdict::Failed { .. } => t.failed += 1,
        }
    }
    let sum = |f: fn(&Tally) -> usize| identities.values().map(f).sum();
    let summary = Summary {
        ring: ring.to_string(),
        seed: config.seed,
        samples: config.samples,
        total: reports.len(),
        equal: sum(|t| t.equal),
        violated: sum(|t| t.violated),
        failed: sum(|t| t.failed),
        identities,
        measured,
    };
    Ok(SuiteOutcome { reports, summary })
}

fn run_case(name: &str, case: usize, ring: &Ring, cfg: &SuiteConfig, rng: &mut Rng) -> CaseOutput {
    let mut out = CaseOutput::default();
    let result = match name {
        "membership" => membership(ring, cfg, case, rng, &mut out),
        "splitting" => splitting(ring, cfg, rng, &mut out),
        "generation" => generation(ring, cfg, rng, &mut out),
        "commutators" => commutators(ring, cfg, rng, &mut out),
        "scaling" => scaling(ring, cfg, rng, &mut out),
        "nested" => nested(ring, cfg, rng, &mut out),
        "nested-scaling" => nested_scaling(ring, cfg, case, rng, &mut out),
        "bridges" => bridges(ring, cfg, rng, &mut out),
        "eichler-props" => eichler_props(ring, cfg, rng, &mut out),
        "dilation" => dilation(ring, cfg, case, rng, &mut out),
        "telescope" => telescope(ring, cfg, case, rng, &mut out),
        _ => unreachable!("validated"),
    };
    if let Err((label, space, e)) = result {
        out.reports.push(IdentityReport::failed(&label, &space, e.to_string()));
    }
    out
}

type CaseResult = std::result::Result<(), (String, AmbientSpace, Error)>;

/// Attaches the identity label and space to an error.
fn ctx<T>(label: &str, space: &AmbientSpace, r: Result<T>) -> std::result::Result<T, (String, AmbientSpace, Error)> {
    r.map_err(|e| (label.to_string(), space.clone(), e))
}

fn membership(ring: &Ring, cfg: &SuiteConfig, case: usize, rng: &mut Rng, out: &mut CaseOutput) -> CaseResult {
    let sp = sample::space(rng, ring, cfg.n_max, cfg.m_max, 1);
    let (u, v, _) = sample::eichler_pair(rng, &sp);
    let qv = ctx("membership-eichler", &sp, sp.q_value(&v))?;
    let mut w0 = vec![ring.zero(); sp.dim()];
    for j in 1..=sp.n() {
        w0[sp.z(j)] = sample::scalar(rng, ring);
    }
    let a0 = ctx("membership-bass", &sp, sp.q_value(&w0))?;
    let gens = [
        ("membership-full-alpha", Generator::Full(sample::hom(rng, &sp, Direction::Alpha))),
        ("membership-full-beta*", Generator::Full(sample::hom(rng, &sp, Direction::BetaStar))),
        ("membership-coord", sample::coord(rng, &sp).generator()),
        ("membership-eichler", Generator::Eichler { u: u.clone(), v, r: qv }),
        ("membership-bass", Generator::Bass { p0: u, a0, w0 }),
    ];
    for (label, g) in gens {
        let r = ctx(label, &sp, id::check_membership(&sp, &g))?;
        out.reports.push(r.renamed(label));
    }
    if cfg.inject_fault && case == 0 {
        let c = sample::coord(rng, &sp);
        let mut t = ctx("membership-corrupted", &sp, c.generator().matrix(&sp))?;
        let last = sp.dim() - 1;
        let bumped = t.get(0, last) + &ring.one();
        t.set(0, last, bumped);
        let lhs = t.transpose().mul(&sp.psi().mul(&t));
        out.reports.push(compare("membership-corrupted", &sp, &lhs, &[sp.psi()]));
    }
    Ok(())
}

fn splitting(ring: &Ring, cfg: &SuiteConfig, rng: &mut Rng, out: &mut CaseOutput) -> CaseResult {
    let sp = sample::space(rng, ring, cfg.n_max, cfg.m_max, 1);
    for dir in [Direction::Alpha, Direction::BetaStar] {
        let label = format!("splitting-{dir}");
        let (a1, a2) = (sample::hom(rng, &sp, dir), sample::hom(rng, &sp, dir));
        let r = ctx(&label, &sp, id::check_splitting(&sp, &a1, &a2))?;
        out.reports.push(r.renamed(&label));
    }
    Ok(())
}

fn generation(ring: &Ring, cfg: &SuiteConfig, rng: &mut Rng, out: &mut CaseOutput) -> CaseResult {
    let sp = sample::space(rng, ring, cfg.n_max, cfg.m_max, 1);
    for dir in [Direction::Alpha, Direction::BetaStar] {
        let label = format!("generation-{dir}");
        let h = sample::hom(rng, &sp, dir);
        let w = ctx(&label, &sp, id::factor_generators(&sp, &h))?;
        let expected = 2 * sp.m() * sp.n() - 1;
        if w.len() != expected {
            out.reports.push(IdentityReport::failed(
                &label,
                &sp,
                format!("{} factors, expected {expected}", w.len()),
            ));
            continue;
        }
        out.reports.push(ctx(&label, &sp, id::check_generation(&sp, &h))?.renamed(&label));
        out.measured.push(("star-pieces-coincide".into(), sp.star_pieces_coincide(&h)));
    }
    Ok(())
}

fn pair_params(rng: &mut Rng, sp: &AmbientSpace) -> PairParams {
    let i = sample::row(rng, sp);
    PairParams {
        i,
        j: sample::col(rng, sp),
        k: sample::other_row(rng, sp, i),
        l: sample::col(rng, sp),
        y1: sample::scalar(rng, sp.ring()),
        y2: sample::scalar(rng, sp.ring()),
    }
}

fn commutators(ring: &Ring, cfg: &SuiteConfig, rng: &mut Rng, out: &mut CaseOutput) -> CaseResult {
    let sp = sample::space(rng, ring, cfg.n_max, cfg.m_max.max(2), 2);
    let p = pair_params(rng, &sp);
    for fam in Family::ALL {
        let label = format!("commutator-{}", fam.name());
        let r = ctx(&label, &sp, id::check_commutator_family(&sp, fam, &p))?;
        out.reports.push(r.renamed(&label));
        let trivial = ctx(&label, &sp, id::same_row_bracket_is_trivial(&sp, fam, &p))?;
        out.measured.push((format!("same-row-trivial-{}", fam.name()), trivial));
    }
    let r = ctx("commutator-unipotent-AA", &sp, id::check_unipotent(&sp, Family::AA, &p))?;
    out.reports.push(r.renamed("commutator-unipotent-AA"));
    Ok(())
}

/// `(uv, wt)` and `(uw, vt)`: equal products.
fn product_split(rng: &mut Rng, ring: &Ring) -> ((Scalar, Scalar), (Scalar, Scalar)) {
    let [u, v, w, t] = [0; 4].map(|_| sample::scalar(rng, ring));
    ((&u * &v, &w * &t), (&u * &w, &v * &t))
}

fn scaling(ring: &Ring, cfg: &SuiteConfig, rng: &mut Rng, out: &mut CaseOutput) -> CaseResult {
    let sp = sample::space(rng, ring, cfg.n_max, cfg.m_max.max(2), 2);
    let p = pair_params(rng, &sp);
    let fam = Family::ALL[rng.gen_range(0..3)];
    let ((a, b), (c, d)) = product_split(rng, ring);
    let label = format!("scaling-{}", fam.name());
    let r = ctx(&label, &sp, id::check_scaling_corollary(&sp, fam, (&a, &b), (&c, &d), &p))?;
    out.reports.push(r.renamed(&label));
    Ok(())
}

fn nested_params(rng: &mut Rng, sp: &AmbientSpace) -> NestedParams {
    let i = sample::row(rng, sp);
    let k = sample::other_row(rng, sp, i);
    let p = sample::other_row(rng, sp, k);
    let ring = sp.ring();
    NestedParams {
        i,
        j: sample::col(rng, sp),
        k,
        l: sample::col(rng, sp),
        p,
        q: sample::col(rng, sp),
        y_out: sample::scalar(rng, ring),
        y_mid: sample::scalar(rng, ring),
        y_inn: sample::scalar(rng, ring),
    }
}

fn nested(ring: &Ring, cfg: &SuiteConfig, rng: &mut Rng, out: &mut CaseOutput) -> CaseResult {
    let sp = sample::space(rng, ring, cfg.n_max, cfg.m_max.max(2), 2);
    let p = nested_params(rng, &sp);
    for v in NestedVariant::ALL {
        let label = format!("nested-{}", v.name());
        let r = ctx(&label, &sp, id::check_nested_family(&sp, v, &p))?;
        out.reports.push(r.renamed(&label));
    }
    Ok(())
}

fn nested_scaling(ring: &Ring, cfg: &SuiteConfig, case: usize, rng: &mut Rng, out: &mut CaseOutput) -> CaseResult {
    let sp = sample::space(rng, ring, cfg.n_max, cfg.m_max.max(2), 2);
    let p = nested_params(rng, &sp);
    let v = NestedVariant::ALL[case % 4];
    // abc = def and a²bc = d²ef with a = d
    let a = sample::scalar(rng, ring);
    let ((b, c), (e, f)) = product_split(rng, ring);
    let label = format!("nested-scaling-{}", v.name());
    let r = ctx(&label, &sp, id::check_nested_scaling(&sp, v, (&a, &b, &c), (&a, &e, &f), &p))?;
    out.reports.push(r.renamed(&label));
    Ok(())
}

fn bridges(ring: &Ring, cfg: &SuiteConfig, rng: &mut Rng, out: &mut CaseOutput) -> CaseResult {
    let sp = sample::space(rng, ring, cfg.n_max, cfg.m_max, 1);
    let c = sample::coord(rng, &sp);
    let label = format!("bridges-{}", c.kind);
    out.reports.push(ctx(&label, &sp, id::check_bridges(&sp, &c))?.renamed(&label));
    Ok(())
}

fn eichler_props(ring: &Ring, cfg: &SuiteConfig, rng: &mut Rng, out: &mut CaseOutput) -> CaseResult {
    let sp = sample::space(rng, ring, cfg.n_max, cfg.m_max, 1);
    let (u, v, w) = sample::eichler_pair(rng, &sp);
    let sigma = Word::product(&sp, &[sample::coord(rng, &sp).word(&sp), sample::coord(rng, &sp).word(&sp)])
        .expect("one space");
    out.reports
        .extend(ctx("eichler-props", &sp, id::check_eichler_properties(&sp, &u, &v, &w, &sigma))?);
    Ok(())
}

/// `F[vars, s, extra..][1/s]` for the field and variables of `ring`.
pub fn localized_ring(ring: &Ring, extra: &[&str]) -> Result<Ring> {
    let base = polynomial_ring(ring, &["s"], extra)?;
    let s = base.var("s")?;
    Ring::localization(&base, &s)
}

/// `F[vars, front.., extra..]` without duplicates.
pub fn polynomial_ring(ring: &Ring, front: &[&str], extra: &[&str]) -> Result<Ring> {
    let mut names: Vec<&str> = Vec::new();
    for v in ring.vars().iter().map(String::as_str).chain(front.iter().copied()).chain(extra.iter().copied()) {
        if !names.contains(&v) {
            names.push(v);
        }
    }
    Ring::polynomial(ring.field(), &names)
}

/// A seeded single-generator dilation problem for the given case.
pub fn dilation_problem(rng: &mut Rng, ring: &Ring, n_max: usize, m_max: usize, case: DilationCase) -> (AmbientSpace, Conjugator, Target) {
    let sp = sample::space(rng, ring, n_max, m_max.max(2), 2);
    let ck = sample::direction(rng);
    let i = sample::row(rng, &sp);
    let (tk, k) = match case {
        DilationCase::SameKindApart => (ck, sample::other_row(rng, &sp, i)),
        DilationCase::SameKindSameRow => (ck, i),
        DilationCase::MixedApart => (ck.other(), sample::other_row(rng, &sp, i)),
        _ => (ck.other(), i),
    };
    let conj = Conjugator {
        kind: ck,
        i,
        j: sample::col(rng, &sp),
        a: sample::nonzero_poly(rng, ring, 2, &[]),
        r: rng.gen_range(0..=2),
    };
    let target = Target {
        kind: tk,
        k,
        l: sample::col(rng, &sp),
        x: sample::nonzero_poly(rng, ring, 2, &[]),
    };
    (sp, conj, target)
}

pub const DILATION_CASES: [DilationCase; 4] = [
    DilationCase::SameKindApart,
    DilationCase::SameKindSameRow,
    DilationCase::MixedApart,
    DilationCase::MixedSameRow,
];

/// Checks one witness and the min-s-order ladder `d_min ..= d`.
pub fn check_dilation(sp: &AmbientSpace, conj: &Conjugator, target: &Target, case: DilationCase, d: u32) -> Result<IdentityReport> {
    let label = format!("dilation-{}", case.label());
    let d_min = case.d_min(conj.r, 1);
    let mut ladder = Vec::new();
    let mut last = None;
    for dd in d_min..=d {
        let w = lg::dilate_generator(sp, conj, target, dd)?;
        ladder.push(w.min_s_order);
        last = Some(w);
    }
    let w = last.ok_or(Error::BudgetTooSmall { d, d_min })?;
    if w.case != case {
        return Ok(IdentityReport::failed(&label, sp, format!("classified as {}", w.case.label())));
    }
    if w.word.len() > case.max_len() {
        return Ok(IdentityReport::failed(&label, sp, format!("{} factors exceed {}", w.word.len(), case.max_len())));
    }
    if !w.verified || w.min_s_order.is_some_and(|o| o < 1) {
        return Ok(IdentityReport::failed(&label, sp, format!("min s-order {:?}", w.min_s_order)));
    }
    let orders: Vec<i64> = ladder.iter().map(|o| o.unwrap_or(i64::MAX)).collect();
    if orders.windows(2).any(|p| p[1] < p[0]) {
        return Ok(IdentityReport::failed(&label, sp, format!("min s-order ladder {orders:?} decreases")));
    }
    let s = sp.ring().s().expect("localized");
    let g = Word::coord(sp, conj.kind, conj.i, conj.j, conj.a.div(&s.pow(conj.r))?);
    let t = Word::coord(sp, target.kind, target.k, target.l, &s.pow(d) * &target.x);
    let lhs = crate::dser::conjugate(&t, &g)?.matrix()?;
    let rhs = w.word.to_space(sp)?.matrix()?;
    Ok(compare(&label, sp, &lhs, &[&rhs]))
}

/// Checks `dilate_theta` on one seeded `θ_s` (n = 1, m = 2).
pub fn check_dilation_theta(ring: &Ring, rng: &mut Rng, shape: usize) -> Result<IdentityReport> {
    let loc = localized_ring(ring, &["x", "X"])?;
    let sp = AmbientSpace::new(&sample::gram(rng, &loc, 1), 2)?;
    let theta = sample::theta_s(rng, &sp, "X", shape);
    let label = "dilation-theta";
    let (d, out) = lg::dilate_theta(&theta, "X")?;
    if out.space().ring().is_localization() {
        return Ok(IdentityReport::failed(label, &sp, "output is not over the base ring".into()));
    }
    let zero = out.space().ring().zero();
    if !lg::specialize_word(&out, "X", &zero)?.matrix()?.is_identity() {
        return Ok(IdentityReport::failed(label, &sp, "output at X = 0 is not the identity".into()));
    }
    let s = loc.s().expect("localized");
    let sub = &s.pow(d) * &loc.var("X")?;
    let lhs = lg::specialize_word(&theta, "X", &sub)?.matrix()?;
    let rhs = out.to_space(&sp)?.matrix()?;
    Ok(compare(label, &sp, &lhs, &[&rhs]))
}

fn dilation(ring: &Ring, cfg: &SuiteConfig, case: usize, rng: &mut Rng, out: &mut CaseOutput) -> CaseResult {
    let loc = localized_ring(ring, &["x"]).map_err(|e| ("dilation".to_string(), placeholder(ring), e))?;
    if case % 5 == 4 {
        let r = check_dilation_theta(ring, rng, case / 5);
        out.reports.push(r.unwrap_or_else(|e| IdentityReport::failed("dilation-theta", &placeholder(&loc), e.to_string())));
        return Ok(());
    }
    let kind = DILATION_CASES[case % 5];
    let (sp, conj, target) = dilation_problem(rng, &loc, cfg.n_max, cfg.m_max, kind);
    let d = kind.d_min(conj.r, 1) + if (case / 5) % 2 == 0 { 0 } else { 3 };
    let label = format!("dilation-{}", kind.label());
    out.reports.push(ctx(&label, &sp, check_dilation(&sp, &conj, &target, kind, d))?);
    Ok(())
}

fn placeholder(ring: &Ring) -> AmbientSpace {
    AmbientSpace::diagonal(ring, &[1], 1).expect("unit form")
}

/// A seeded `θ` over `A[X]` with `θ(0) = Id`.
pub fn telescope_theta(rng: &mut Rng, sp: &AmbientSpace, var: &str) -> Word {
    let ring = sp.ring();
    let x = ring.var(var).expect("declared");
    let len = rng.gen_range(1..=2);
    let mut words = Vec::new();
    for _ in 0..len {
        let c = sample::coord(rng, sp);
        let p = sample::poly(rng, ring, 1, &[var]);
        words.push(Word::coord(sp, c.kind, c.i, c.j, &x * &p));
    }
    let inner = Word::product(sp, &words).expect("one space");
    if rng.gen_bool(0.5) {
        let g = sample::coord(rng, sp);
        let gw = Word::coord(sp, g.kind, g.i, g.j, sample::poly(rng, ring, 1, &[var]));
        crate::dser::conjugate(&inner, &gw).expect("one space")
    } else {
        inner
    }
}

/// The ring used by the telescoping suite: the input variables plus `t` and `X`.
pub fn telescope_ring(ring: &Ring) -> Result<Ring> {
    let base = if ring.is_localization() { ring.base() } else { ring.clone() };
    polynomial_ring(&base, &["t"], &["X"])
}

pub fn check_telescope(sp: &AmbientSpace, theta: &Word, shares: &[(Scalar, Scalar)]) -> Result<IdentityReport> {
    let m = theta.matrix()?;
    let kappas = lg::telescope(sp, &m, "X", shares)?;
    let prod = kappas.iter().fold(Matrix::identity(sp.ring(), sp.dim()), |acc, k| acc.mul(k));
    for k in &kappas {
        if let Some((row, col)) = sp.orthogonality_defect(k)? {
            return Ok(IdentityReport::failed("telescope", sp, format!("kappa not orthogonal at ({row}, {col})")));
        }
    }
    Ok(compare("telescope", sp, &prod, &[&m]))
}

fn telescope(ring: &Ring, cfg: &SuiteConfig, case: usize, rng: &mut Rng, out: &mut CaseOutput) -> CaseResult {
    let tr = telescope_ring(ring).map_err(|e| ("telescope".to_string(), placeholder(ring), e))?;
    let sp = sample::space(rng, &tr, cfg.n_max.min(2), cfg.m_max.min(2), 1);
    let theta = telescope_theta(rng, &sp, "X");
    let shares = sample::partition_of_unity(rng, &tr, 1 + case % 4, &["X"]);
    out.reports.push(ctx("telescope", &sp, check_telescope(&sp, &theta, &shares))?);
    Ok(())
}

/// Reduces a rational witness word modulo `p` when its denominators allow it.
pub fn reduce_word(w: &Word, p: u64) -> Result<Word> {
    let ring = w.space().ring();
    if ring.field() != Field::Rationals {
        return Err(Error::InvalidRing(format!("{ring} is not over QQ")));
    }
    let names: Vec<&str> = ring.vars().iter().map(String::as_str).collect();
    let mut target = Ring::polynomial(Field::Prime(p), &names)?;
    if let Some(s) = ring.s() {
        let s = s.to_ring(&target.base())?;
        target = Ring::localization(&target, &s)?;
    }
    let space = w.space().to_ring(&target)?;
    w.map_scalars(&space, |y| y.to_ring(&target))
}
