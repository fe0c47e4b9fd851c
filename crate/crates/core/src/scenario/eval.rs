//! Evaluation of scenarios into reports.

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::input::{
    build_class, build_curve, build_sheaf, ClassSpec, Expect, FamilySpec, LawSpec, RandomSuite, Scenario, SheafInput,
};
use crate::arith::{int, rat, Rational};
use crate::curve::{GCurve, QuotientSummary, SheafSpec};
use crate::engine::{
    bound_certificates, chi_g, def_dim, deg_g, dual_graph_chi, h0_class, h0_omega, invariant_dim, topo_chi,
    Certificate, DefDim, H0Route, InvariantDim, Locus, NodeEvaluation,
};
use crate::error::{Error, Result};
use crate::oracle::random::{random_curve, random_generic, random_pluri, Family};
use crate::oracle::{graph_homology_rep, hodge_checks, residue_h0, superelliptic_class, superelliptic_datum, superelliptic_h0, SignedGraph};
use crate::rep::RepClass;

/// A class as its full multiplicity vector plus its degree.
#[derive(Clone, Debug, Serialize)]
pub struct ClassOut {
    pub multiplicities: Vec<(String, String)>,
    pub degree: String,
    pub text: String,
}

impl ClassOut {
    pub fn new(c: &RepClass) -> Result<ClassOut> {
        let m = c.multiplicities()?;
        Ok(ClassOut {
            multiplicities: m.iter().enumerate().map(|(i, x)| (format!("X{i}"), x.to_string())).collect(),
            degree: c.degree().to_string(),
            text: c.describe(),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupOut {
    pub label: String,
    pub order: usize,
    pub classes: usize,
    pub irreducible_degrees: Vec<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LocusOut {
    pub locus: Locus,
    pub class: ClassOut,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChiOut {
    pub chi_g: ClassOut,
    pub regular_part: String,
    pub euler: i64,
    pub degree: i64,
    pub rank: u32,
    pub breakdown: Vec<LocusOut>,
    pub nodes: Vec<NodeEvaluation>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegOut {
    pub deg_g: ClassOut,
    pub chi_e: ClassOut,
    pub chi_o: ClassOut,
}

#[derive(Clone, Debug, Serialize)]
pub struct H0Out {
    pub sheaf: ClassOut,
    pub route: H0Route,
    pub omega: ClassOut,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualOut {
    pub c0: ClassOut,
    pub c1: ClassOut,
    pub chi: ClassOut,
    pub h0_normalization: ClassOut,
    pub h0_omega_via_graph: ClassOut,
}

#[derive(Clone, Debug, Serialize)]
pub struct TopoOut {
    pub chi: ClassOut,
    pub euler: i64,
    pub h1: ClassOut,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub twist: i64,
    pub chi_g: ClassOut,
}

/// One comparison and its outcome.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(check: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
        Check { check: check.into(), passed, detail: detail.into() }
    }

    fn compare(check: impl Into<String>, got: &RepClass, want: &RepClass) -> Check {
        let passed = got == want;
        Check::new(check, passed, format!("got {got}, expected {want}"))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RandomOut {
    pub family: String,
    pub law: String,
    pub seed: u64,
    pub count: usize,
    pub passed: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Results {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi_g: Option<ChiOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deg_g: Option<DegOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h0: Option<H0Out>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub invariant_dim: Vec<InvariantDim>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub def_dim: Option<DefDim>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual_graph: Option<DualOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub topo: Option<TopoOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<Vec<Certificate>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub sweep: Vec<SweepRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub random: Option<RandomOut>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub name: String,
    pub description: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient: Option<QuotientSummary>,
    pub results: Results,
    pub verified: Vec<Check>,
    pub passed: bool,
    pub scenario: serde_json::Value,
}

/// Evaluation flags.
#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    /// Compare against expectations and run the oracles.
    pub check: bool,
    /// Overrides the seed of a random block.
    pub seed: Option<u64>,
}

/// Parse and evaluate a scenario document.
pub fn run_text(text: &str, opts: Options) -> Result<Report> {
    let (scenario, value) = Scenario::from_json(text)?;
    evaluate(&scenario, value, opts)
}

pub fn evaluate(s: &Scenario, value: serde_json::Value, opts: Options) -> Result<Report> {
    let mut results = Results::default();
    let mut verified = Vec::new();
    let mut group = None;
    let mut quotient = None;
    if let Some(suite) = &s.random {
        let out = run_suite(suite, opts.seed.unwrap_or(suite.seed))?;
        verified.push(Check::new(
            format!("random.{}", out.law),
            out.failures.is_empty(),
            format!("{} of {} instances with seed {}", out.passed, out.count, out.seed),
        ));
        results.random = Some(out);
    }
    if s.group.is_some() {
        let curve = build_curve(s)?;
        let sheaf_in = s.sheaf.as_ref().expect("checked by the shape check");
        let sheaf = build_sheaf(&curve, sheaf_in)?;
        let g = curve.group();
        let table = g.character_table()?;
        group = Some(GroupOut {
            label: g.label().to_string(),
            order: g.order(),
            classes: g.num_classes(),
            irreducible_degrees: table.degrees().to_vec(),
        });
        quotient = Some(curve.quotient_summary());
        evaluate_curve(s, &curve, sheaf_in, &sheaf, opts, &mut results, &mut verified)?;
    }
    let passed = verified.iter().all(|c| c.passed);
    Ok(Report {
        name: s.name.clone(),
        description: s.description.clone(),
        group,
        quotient,
        results,
        verified,
        passed,
        scenario: value,
    })
}

fn evaluate_curve(
    s: &Scenario,
    curve: &GCurve,
    sheaf_in: &SheafInput,
    sheaf: &SheafSpec,
    opts: Options,
    results: &mut Results,
    verified: &mut Vec<Check>,
) -> Result<()> {
    let g = curve.group();
    let expect = if opts.check { s.expect.clone().unwrap_or_default() } else { Expect::default() };
    let class = |spec: &ClassSpec| build_class(g, spec);

    // The main sheaf is always evaluated: its internal identities are part of every run.
    let chi = chi_g(curve, sheaf)?;
    verified.push(Check::new(
        "riemann_roch",
        chi.chi_g.degree() == int(chi.euler),
        format!("deg chi_G = {}, chi(E) = {}", chi.chi_g.degree(), chi.euler),
    ));
    if chi.nodes.iter().any(|n| n.paths_agree.is_some()) {
        let ok = chi.nodes.iter().all(|n| n.paths_agree != Some(false));
        verified.push(Check::new("node_fast_path", ok, "smoothable nodes agree with the general formula"));
    }
    if let Some(want) = &expect.chi_g {
        verified.push(Check::compare("expect.chi_g", &chi.chi_g, &class(want)?));
    }
    if let Some(flag) = expect.not_regular_multiple {
        let multiple = RepClass::regular(g).scale(&rat(chi.euler, g.order() as i64));
        let differs = chi.chi_g != multiple;
        verified.push(Check::new(
            "expect.not_regular_multiple",
            differs == flag,
            format!("chi_G = {}, (chi(E)/|G|) k[G] = {}", chi.chi_g, multiple),
        ));
    }
    if s.wants("chi_g") {
        results.chi_g = Some(ChiOut {
            chi_g: ClassOut::new(&chi.chi_g)?,
            regular_part: chi.regular_part.to_string(),
            euler: chi.euler,
            degree: chi.degree,
            rank: chi.rank,
            breakdown: chi
                .breakdown
                .iter()
                .map(|(l, c)| Ok(LocusOut { locus: *l, class: ClassOut::new(c)? }))
                .collect::<Result<Vec<_>>>()?,
            nodes: chi.nodes.clone(),
        });
    }

    if s.wants("deg_g") || expect.deg_g.is_some() {
        let d = deg_g(curve, sheaf)?;
        if let Some(want) = &expect.deg_g {
            verified.push(Check::compare("expect.deg_g", &d.deg_g, &class(want)?));
        }
        results.deg_g =
            Some(DegOut { deg_g: ClassOut::new(&d.deg_g)?, chi_e: ClassOut::new(&d.chi_e)?, chi_o: ClassOut::new(&d.chi_o)? });
    }

    let omega = if s.wants("h0") || expect.h0.is_some() || expect.h0_omega.is_some() || expect.h0_omega_zero_multiplicity.is_some() {
        Some(h0_omega(curve)?)
    } else {
        None
    };
    if s.wants("h0") || expect.h0.is_some() {
        let (h, route) = h0_class(curve, sheaf)?;
        if let Some(want) = &expect.h0 {
            verified.push(Check::compare("expect.h0", &h, &class(want)?));
        }
        results.h0 = Some(H0Out {
            sheaf: ClassOut::new(&h)?,
            route,
            omega: ClassOut::new(omega.as_ref().expect("computed above"))?,
        });
    }
    if let (Some(want), Some(h)) = (&expect.h0_omega, &omega) {
        verified.push(Check::compare("expect.h0_omega", h, &class(want)?));
    }
    if let (Some(flag), Some(h)) = (expect.h0_omega_zero_multiplicity, &omega) {
        let zeros: Vec<String> = h
            .multiplicities()?
            .iter()
            .enumerate()
            .filter(|(_, m)| m.is_zero())
            .map(|(i, _)| format!("X{i}"))
            .collect();
        let pa = curve.quotient_summary().arithmetic_genus;
        verified.push(Check::new(
            "expect.h0_omega_zero_multiplicity",
            zeros.is_empty() != flag,
            format!("zero multiplicity at [{}] with p_a(C/G) = {pa}", zeros.join(", ")),
        ));
    }

    let use_t = matches!(sheaf_in, SheafInput::Omega { use_t: true, .. });
    let mut degrees = s.invariant_degrees();
    if let Some(list) = &expect.invariant_dim {
        for (m, _) in list {
            if !degrees.contains(m) {
                degrees.push(*m);
            }
        }
    }
    for m in degrees {
        let inv = invariant_dim(curve, m, use_t)?;
        if let Some((_, want)) = expect.invariant_dim.iter().flatten().find(|(k, _)| *k == m) {
            let want = want.value()?;
            let got = inv.dimension.clone().unwrap_or_else(|| inv.closed_form.clone());
            verified.push(Check::new(
                format!("expect.invariant_dim[{m}]"),
                got == want,
                format!("got {got}, expected {want}"),
            ));
        }
        results.invariant_dim.push(inv);
    }

    if s.wants("def_dim") || expect.def_dim.is_some() {
        let d = def_dim(curve)?;
        if let Some(want) = expect.def_dim {
            verified.push(Check::new("expect.def_dim", d.value == want, format!("got {}, expected {want}", d.value)));
        }
        results.def_dim = Some(d);
    }
    if let Some(want) = expect.quotient_arithmetic_genus {
        let pa = curve.quotient_summary().arithmetic_genus;
        verified.push(Check::new("expect.quotient_arithmetic_genus", pa == want, format!("got {pa}, expected {want}")));
    }

    if s.wants("dual_graph") || expect.dual_graph.is_some() {
        let d = dual_graph_chi(curve)?;
        if let Some(want) = &expect.dual_graph {
            verified.push(Check::compare("expect.dual_graph", &d.chi, &class(want)?));
        }
        results.dual_graph = Some(DualOut {
            c0: ClassOut::new(&d.c0)?,
            c1: ClassOut::new(&d.c1)?,
            chi: ClassOut::new(&d.chi)?,
            h0_normalization: ClassOut::new(&d.h0_normalization)?,
            h0_omega_via_graph: ClassOut::new(&d.h0_omega_via_graph)?,
        });
    }

    if s.wants("topo") || expect.topo.is_some() {
        let t = topo_chi(curve)?;
        verified.push(Check::new(
            "topo_degree",
            t.chi.degree() == int(t.euler),
            format!("deg = {}, sum (2 - 2g) - #S = {}", t.chi.degree(), t.euler),
        ));
        if let Some(want) = &expect.topo {
            verified.push(Check::compare("expect.topo", &t.chi, &class(want)?));
        }
        results.topo = Some(TopoOut { chi: ClassOut::new(&t.chi)?, euler: t.euler, h1: ClassOut::new(&t.h1)? });
    }

    if s.wants("bounds") || !expect.failing_certificates.is_empty() {
        let certs = bound_certificates(curve, sheaf)?;
        for name in &expect.failing_certificates {
            let found = certs.iter().find(|c| &c.name == name);
            let (ok, detail) = match found {
                Some(c) if c.applicable && c.holds == Some(false) => {
                    (true, format!("fails as expected, witnesses {:?}", c.witness))
                }
                Some(c) => (false, format!("applicable {}, holds {:?}", c.applicable, c.holds)),
                None => (false, "certificate not produced".into()),
            };
            verified.push(Check::new(format!("expect.failing[{name}]"), ok, detail));
        }
        results.bounds = Some(certs);
    }

    if let Some(sw) = &s.sweep {
        let SheafInput::Omega { m, use_t, .. } = sheaf_in else {
            return Err(Error::Schema("a sweep needs an omega sheaf".into()));
        };
        let wants = expect.sweep.as_ref();
        if let Some(w) = wants {
            if w.len() != sw.values.len() {
                return Err(Error::Schema("expected sweep rows must match the sweep values".into()));
            }
        }
        for (row, &q) in sw.values.iter().enumerate() {
            let mut twists: Vec<Vec<i64>> = curve.components().iter().map(|c| vec![0; c.marked.len()]).collect();
            let slot = twists
                .get_mut(sw.component)
                .and_then(|t| t.get_mut(sw.marked))
                .ok_or_else(|| Error::Schema("sweep names a missing marked orbit".into()))?;
            *slot = q;
            let c = chi_g(curve, &SheafSpec::Pluri { m: *m, use_t: *use_t, twists })?.chi_g;
            if let Some(w) = wants {
                verified.push(Check::compare(format!("expect.sweep[{q}]"), &c, &class(&w[row])?));
            }
            results.sweep.push(SweepRow { twist: q, chi_g: ClassOut::new(&c)? });
        }
    }

    if opts.check || s.wants("oracle_check") {
        let checks = oracle_checks(curve)?;
        if checks.is_empty() && s.wants("oracle_check") {
            return Err(Error::NotApplicable("no oracle applies to this curve".into()));
        }
        verified.extend(checks);
    }
    Ok(())
}

/// Every independent cross-check that applies to the curve.
pub fn oracle_checks(curve: &GCurve) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let graph = SignedGraph::from_curve(curve);
    graph.validate()?;
    match graph_homology_rep(&graph) {
        Ok(_) => out.push(Check::new("oracle.graph_euler", true, "[H_0] - [H_1] = [C_0] - [C_1]")),
        Err(e) => out.push(Check::new("oracle.graph_euler", false, e.to_string())),
    }
    match residue_h0(curve) {
        Ok(r) => out.push(Check::compare("oracle.residues", &h0_omega(curve)?, &r)),
        Err(Error::NotApplicable(_)) => {}
        Err(e) => out.push(Check::new("oracle.residues", false, e.to_string())),
    }
    if curve.components().iter().all(|c| c.genus == 0) {
        match hodge_checks(curve) {
            Ok(r) => out.push(Check::new("oracle.hodge", true, format!("H^1(C) = H^0(omega) = {}", r.residues))),
            Err(e) => out.push(Check::new("oracle.hodge", false, e.to_string())),
        }
    }
    if curve.is_smooth() && curve.components().len() == 1 {
        let genus = curve.components()[0].genus;
        for m in 1..=3i64 {
            if m > 1 && genus < 2 {
                break;
            }
            let datum = match superelliptic_datum(curve, 0, m) {
                Ok(d) => d,
                Err(Error::NotApplicable(_)) => break,
                Err(e) => {
                    out.push(Check::new("oracle.superelliptic", false, e.to_string()));
                    break;
                }
            };
            let want = superelliptic_class(curve.group(), &superelliptic_h0(&datum)?)?;
            let got = h0_class(curve, &SheafSpec::pluri(curve, m, false))?.0;
            out.push(Check::compare(format!("oracle.superelliptic[m={m}]"), &got, &want));
        }
    }
    Ok(out)
}

fn family(f: FamilySpec) -> Family {
    match f {
        FamilySpec::Free => Family::Free,
        FamilySpec::Smooth => Family::Smooth,
        FamilySpec::Nodal => Family::Nodal,
        FamilySpec::RationalNodal => Family::RationalNodal,
    }
}

fn check_instance(rng: &mut ChaCha8Rng, suite: &RandomSuite, i: usize) -> Result<Option<String>> {
    let curve = random_curve(rng, family(suite.family))?;
    let g = curve.group();
    Ok(match suite.law {
        LawSpec::Free => {
            let spec = if i.is_multiple_of(2) { random_generic(rng, &curve)? } else { random_pluri(rng, &curve) };
            let r = chi_g(&curve, &spec)?;
            let want = RepClass::regular(g).scale(&Rational::new(r.euler.into(), (g.order() as i64).into()));
            (r.chi_g != want).then(|| format!("instance {i} over {}: {} vs {}", g.label(), r.chi_g, want))
        }
        LawSpec::Residues => {
            let got = h0_omega(&curve)?;
            let want = residue_h0(&curve)?;
            (got != want).then(|| format!("instance {i} over {}: {} vs {}", g.label(), got, want))
        }
        LawSpec::RiemannRoch => {
            let spec = random_generic(rng, &curve)?;
            let d = deg_g(&curve, &spec)?;
            let euler = chi_g(&curve, &spec)?.euler;
            (d.chi_e.degree() != int(euler)).then(|| format!("instance {i}: degree {} vs {euler}", d.chi_e.degree()))
        }
    })
}

/// Run a seeded property suite.
pub fn run_suite(suite: &RandomSuite, seed: u64) -> Result<RandomOut> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for i in 0..suite.count {
        match check_instance(&mut rng, suite, i) {
            Ok(None) => {}
            Ok(Some(f)) => failures.push(f),
            Err(e) => failures.push(format!("instance {i}: {e}")),
        }
    }
    Ok(RandomOut {
        family: suite.family.as_str().into(),
        law: suite.law.as_str().into(),
        seed,
        count: suite.count,
        passed: suite.count - failures.len(),
        failures,
    })
}
