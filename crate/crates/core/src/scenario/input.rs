//! Scenario documents and their translation into engine data.

use std::sync::Arc;

use serde::Deserialize;

use crate::arith::{int, parse_rational, Rational};
use crate::curve::{
    Branch, ComponentOrbit, GCurve, GenericSheaf, MarkedOrbit, NodeKind, NodeOrbit, Piece, SheafSpec,
};
use crate::error::{Error, Result};
use crate::group::{cyclic, dihedral, product, symmetric, Perm, PermGroup, Subgroup};
use crate::rep::{linear_character, RepClass};

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub group: Option<GroupSpec>,
    #[serde(default)]
    pub components: Vec<ComponentSpec>,
    #[serde(default)]
    pub nodes: Vec<NodeSpec>,
    pub sheaf: Option<SheafInput>,
    #[serde(default)]
    pub outputs: Vec<OutputSpec>,
    pub sweep: Option<Sweep>,
    pub expect: Option<Expect>,
    pub random: Option<RandomSuite>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Builtin(BuiltinGroup),
    Explicit(ExplicitGroup),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuiltinGroup {
    pub builtin: String,
    pub n: Option<usize>,
    pub factors: Option<Vec<GroupSpec>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitGroup {
    pub degree: usize,
    pub generators: Vec<Vec<u32>>,
}

/// `"whole"`, `"trivial"`, or generators given as generator indices, words in
/// the generators, or explicit permutations.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum SubgroupSpec {
    Named(String),
    Generators {
        generators: Vec<usize>,
    },
    Words {
        words: Vec<Vec<usize>>,
    },
    Permutations {
        permutations: Vec<Vec<u32>>,
    },
}

/// A group element as a word in the generators or an explicit permutation.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ElementSpec {
    Word(Vec<usize>),
    Permutation { permutation: Vec<u32> },
}

/// A cotangent character: `"trivial"` or exponents on the stabilizer's
/// generators, in units of `1 / (|stabilizer| / |inertia|)`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ThetaSpec {
    Named(String),
    Exponents { exponents: Vec<i64> },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarkedSpec {
    pub stabilizer: SubgroupSpec,
    pub theta: ThetaSpec,
    #[serde(rename = "in_T", default)]
    pub in_t: bool,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub genus: u32,
    pub decomposition: SubgroupSpec,
    pub inertia: SubgroupSpec,
    #[serde(default)]
    pub marked: Vec<MarkedSpec>,
}

#[derive(Clone, Copy, Debug, Deserialize)]
pub enum NodeKindSpec {
    S1,
    S2,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchSpec {
    pub component: usize,
    pub translate: Option<ElementSpec>,
    pub theta: ThetaSpec,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeSpec {
    pub kind: NodeKindSpec,
    pub stabilizer: SubgroupSpec,
    pub branch_stabilizer: SubgroupSpec,
    pub branches: Vec<BranchSpec>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceSpec {
    pub irrep: usize,
    pub rank: u32,
    pub degree: i64,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case", deny_unknown_fields)]
pub enum SheafInput {
    Structure,
    Omega {
        #[serde(default = "one")]
        m: i64,
        #[serde(rename = "use_T", default)]
        use_t: bool,
        twists: Option<Vec<Vec<i64>>>,
    },
    Generic {
        rank: u32,
        pieces: Vec<Vec<PieceSpec>>,
        marked_fibers: Vec<Vec<ClassSpec>>,
        node_fibers: Vec<ClassSpec>,
        node_e_tensor_s: Option<Vec<Option<ClassSpec>>>,
        #[serde(default)]
        assume_ample: bool,
    },
}

fn one() -> i64 {
    1
}

/// A rational coefficient as an integer or a `"p/q"` string.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    Text(String),
}

impl Coeff {
    pub fn value(&self) -> Result<Rational> {
        match self {
            Coeff::Int(n) => Ok(int(*n)),
            Coeff::Text(s) => parse_rational(s).map_err(|_| Error::Schema(format!("bad rational {s:?}"))),
        }
    }
}

/// A basis element of the representation ring.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum BasisSpec {
    Named(String),
    Linear {
        linear: Vec<i64>,
        order: Option<u32>,
    },
    Irreducible {
        irreducible: usize,
    },
    Induced {
        induced: SubgroupSpec,
    },
}

/// A class as a list of `[coefficient, basis]` terms.
pub type ClassSpec = Vec<(Coeff, BasisSpec)>;

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum OutputSpec {
    Named(String),
    InvariantDim { invariant_dim: Vec<i64> },
}

/// Evaluate `chi_G` for a range of twists on one marked orbit.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    pub component: usize,
    pub marked: usize,
    pub values: Vec<i64>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expect {
    pub chi_g: Option<ClassSpec>,
    pub deg_g: Option<ClassSpec>,
    pub h0: Option<ClassSpec>,
    pub h0_omega: Option<ClassSpec>,
    pub topo: Option<ClassSpec>,
    pub dual_graph: Option<ClassSpec>,
    pub sweep: Option<Vec<ClassSpec>>,
    pub invariant_dim: Option<Vec<(i64, Coeff)>>,
    pub def_dim: Option<i64>,
    pub quotient_arithmetic_genus: Option<i64>,
    /// Some irreducible has multiplicity exactly zero in `[H^0(C, omega_C)]`.
    pub h0_omega_zero_multiplicity: Option<bool>,
    #[serde(default)]
    pub failing_certificates: Vec<String>,
    /// `chi_G` is not a rational multiple of the regular representation.
    pub not_regular_multiple: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilySpec {
    Free,
    Smooth,
    Nodal,
    RationalNodal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LawSpec {
    /// `chi_G(E) = (chi(E) / |G|) [k[G]]`.
    Free,
    /// `[H^0(C, omega_C)]` agrees with the residue oracle.
    Residues,
    /// `deg chi_G(E) = chi(E)` and equivariant Riemann-Roch.
    RiemannRoch,
}

impl FamilySpec {
    pub fn as_str(self) -> &'static str {
        match self {
            FamilySpec::Free => "free",
            FamilySpec::Smooth => "smooth",
            FamilySpec::Nodal => "nodal",
            FamilySpec::RationalNodal => "rational_nodal",
        }
    }
}

impl LawSpec {
    pub fn as_str(self) -> &'static str {
        match self {
            LawSpec::Free => "free",
            LawSpec::Residues => "residues",
            LawSpec::RiemannRoch => "riemann_roch",
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomSuite {
    pub family: FamilySpec,
    pub law: LawSpec,
    pub count: usize,
    #[serde(default)]
    pub seed: u64,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<(Scenario, serde_json::Value)> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        let scenario: Scenario = serde_json::from_value(value.clone()).map_err(|e| Error::Schema(e.to_string()))?;
        scenario.check_shape()?;
        Ok((scenario, value))
    }

    fn check_shape(&self) -> Result<()> {
        let bad = |s: &str| Err(Error::Schema(s.into()));
        match (&self.group, &self.random) {
            (None, None) => return bad("a scenario needs a curve or a random block"),
            (Some(_), _) if self.components.is_empty() => return bad("a curve needs at least one component"),
            (Some(_), _) if self.sheaf.is_none() => return bad("a curve needs a sheaf"),
            _ => {}
        }
        for o in &self.outputs {
            if let OutputSpec::Named(n) = o {
                if !OUTPUTS.contains(&n.as_str()) {
                    return Err(Error::Schema(format!("unknown output {n:?}")));
                }
            }
        }
        Ok(())
    }

    /// Requested invariant dimension degrees, in order.
    pub fn invariant_degrees(&self) -> Vec<i64> {
        self.outputs
            .iter()
            .filter_map(|o| match o {
                OutputSpec::InvariantDim { invariant_dim } => Some(invariant_dim.clone()),
                _ => None,
            })
            .flatten()
            .collect()
    }

    pub fn wants(&self, name: &str) -> bool {
        self.outputs.iter().any(|o| matches!(o, OutputSpec::Named(n) if n == name))
    }
}

/// Output names accepted in `outputs`.
pub const OUTPUTS: &[&str] =
    &["chi_g", "deg_g", "h0", "def_dim", "dual_graph", "topo", "bounds", "oracle_check"];

pub fn build_group(spec: &GroupSpec) -> Result<Arc<PermGroup>> {
    match spec {
        GroupSpec::Builtin(b) => {
            let n = || b.n.ok_or_else(|| Error::Schema(format!("builtin {:?} needs n", b.builtin)));
            match b.builtin.as_str() {
                "cyclic" => cyclic(n()?),
                "dihedral" => dihedral(n()?),
                "symmetric" => symmetric(n()?),
                "product" => {
                    let f = b.factors.as_deref().unwrap_or_default();
                    let [a, c] = f else {
                        return Err(Error::Schema("product needs exactly two factors".into()));
                    };
                    product(&*build_group(a)?, &*build_group(c)?)
                }
                other => Err(Error::Schema(format!("unknown builtin group {other:?}"))),
            }
        }
        GroupSpec::Explicit(e) => {
            let gens = e.generators.iter().map(|g| Perm::new(g.clone())).collect::<Result<Vec<_>>>()?;
            PermGroup::generate(e.degree, gens)
        }
    }
}

fn word(parent: &Arc<PermGroup>, w: &[usize]) -> Result<usize> {
    let gens = parent.generators();
    let mut x = parent.index_of(&Perm::identity(parent.degree())).expect("identity");
    for &i in w {
        let p = gens
            .get(i)
            .ok_or_else(|| Error::Schema(format!("generator index {i} out of range")))?;
        x = parent.mul(x, parent.index_of(p).expect("generator"));
    }
    Ok(x)
}

pub fn build_element(parent: &Arc<PermGroup>, spec: &ElementSpec) -> Result<usize> {
    match spec {
        ElementSpec::Word(w) => word(parent, w),
        ElementSpec::Permutation { permutation } => {
            let p = Perm::new(permutation.clone())?;
            parent.index_of(&p).ok_or_else(|| Error::NotInParent(p.cycles()))
        }
    }
}

pub fn build_subgroup(parent: &Arc<PermGroup>, spec: &SubgroupSpec) -> Result<Subgroup> {
    match spec {
        SubgroupSpec::Named(n) => match n.as_str() {
            "whole" => Ok(Subgroup::whole(parent)),
            "trivial" => Ok(Subgroup::trivial(parent)),
            other => Err(Error::Schema(format!("unknown subgroup {other:?}"))),
        },
        SubgroupSpec::Generators { generators } => {
            let idx = generators.iter().map(|&i| word(parent, &[i])).collect::<Result<Vec<_>>>()?;
            Subgroup::from_indices(parent, &idx)
        }
        SubgroupSpec::Words { words } => {
            let idx = words.iter().map(|w| word(parent, w)).collect::<Result<Vec<_>>>()?;
            Subgroup::from_indices(parent, &idx)
        }
        SubgroupSpec::Permutations { permutations } => {
            let gens = permutations.iter().map(|p| Perm::new(p.clone())).collect::<Result<Vec<_>>>()?;
            Subgroup::generated_by(parent, gens)
        }
    }
}

fn build_theta(stab: &Subgroup, inertia_order: usize, spec: &ThetaSpec) -> Result<RepClass> {
    match spec {
        ThetaSpec::Named(n) if n == "trivial" => Ok(RepClass::trivial(stab.group())),
        ThetaSpec::Named(n) => Err(Error::Schema(format!("unknown character {n:?}"))),
        ThetaSpec::Exponents { exponents } => crate::curve::theta_from_exponents(stab, inertia_order, exponents),
    }
}

/// A class over `group` from `[coefficient, basis]` terms.
pub fn build_class(group: &Arc<PermGroup>, spec: &ClassSpec) -> Result<RepClass> {
    let mut acc = RepClass::zero(group);
    for (coeff, basis) in spec {
        let b = match basis {
            BasisSpec::Named(n) => match n.as_str() {
                "regular" => RepClass::regular(group),
                "trivial" => RepClass::trivial(group),
                other => return Err(Error::Schema(format!("unknown basis class {other:?}"))),
            },
            BasisSpec::Linear { linear, order } => {
                let order = order.unwrap_or(group.order().max(1) as u32);
                linear_character(group, group.generators(), linear, order)?
            }
            BasisSpec::Irreducible { irreducible } => RepClass::irreducible(group, *irreducible)?,
            BasisSpec::Induced { induced } => RepClass::permutation(&build_subgroup(group, induced)?),
        };
        acc = acc.try_add(&b.scale(&coeff.value()?))?;
    }
    Ok(acc)
}

pub fn build_curve(s: &Scenario) -> Result<GCurve> {
    let spec = s.group.as_ref().ok_or_else(|| Error::Schema("missing group".into()))?;
    let g = build_group(spec)?;
    let mut comps = Vec::new();
    for c in &s.components {
        let decomposition = build_subgroup(&g, &c.decomposition)?;
        let inertia = build_subgroup(&g, &c.inertia)?;
        let mut marked = Vec::new();
        for m in &c.marked {
            let stabilizer = build_subgroup(&g, &m.stabilizer)?;
            let theta = build_theta(&stabilizer, inertia.order(), &m.theta)?;
            marked.push(MarkedOrbit { stabilizer, theta, in_t: m.in_t });
        }
        comps.push(ComponentOrbit { genus: c.genus, decomposition, inertia, marked });
    }
    let mut nodes = Vec::new();
    for n in &s.nodes {
        let stabilizer = build_subgroup(&g, &n.stabilizer)?;
        let branch_stabilizer = build_subgroup(&g, &n.branch_stabilizer)?;
        let mut branches = Vec::new();
        for b in &n.branches {
            let translate = match &b.translate {
                Some(e) => build_element(&g, e)?,
                None => word(&g, &[])?,
            };
            let inertia_order = comps
                .get(b.component)
                .map(|c| c.inertia.order())
                .ok_or_else(|| Error::InvalidCurve(format!("unknown component {}", b.component)))?;
            let theta = build_theta(&branch_stabilizer, inertia_order, &b.theta)?;
            branches.push(Branch { component: b.component, translate, theta });
        }
        let kind = match n.kind {
            NodeKindSpec::S1 => NodeKind::S1,
            NodeKindSpec::S2 => NodeKind::S2,
        };
        nodes.push(NodeOrbit { kind, stabilizer, branch_stabilizer, branches });
    }
    GCurve::new(g, comps, nodes)
}

pub fn build_sheaf(curve: &GCurve, spec: &SheafInput) -> Result<SheafSpec> {
    Ok(match spec {
        SheafInput::Structure => SheafSpec::structure(curve),
        SheafInput::Omega { m, use_t, twists } => {
            let twists = match twists {
                Some(t) => t.clone(),
                None => curve.components().iter().map(|c| vec![0; c.marked.len()]).collect(),
            };
            SheafSpec::Pluri { m: *m, use_t: *use_t, twists }
        }
        SheafInput::Generic { rank, pieces, marked_fibers, node_fibers, node_e_tensor_s, assume_ample } => {
            let pieces = pieces
                .iter()
                .map(|l| l.iter().map(|p| Piece { irrep: p.irrep, rank: p.rank, degree: p.degree }).collect())
                .collect();
            let mut mf = Vec::new();
            for (i, list) in marked_fibers.iter().enumerate() {
                let comp = curve
                    .components()
                    .get(i)
                    .ok_or_else(|| Error::InvalidSheaf("more fiber lists than component orbits".into()))?;
                let mut row = Vec::new();
                for (j, f) in list.iter().enumerate() {
                    let m = comp
                        .marked
                        .get(j)
                        .ok_or_else(|| Error::InvalidSheaf(format!("component {i} has no marked orbit {j}")))?;
                    row.push(build_class(m.stabilizer.group(), f)?);
                }
                mf.push(row);
            }
            let mut nf = Vec::new();
            for (k, f) in node_fibers.iter().enumerate() {
                let n = curve
                    .nodes()
                    .get(k)
                    .ok_or_else(|| Error::InvalidSheaf("more node fibers than node orbits".into()))?;
                nf.push(build_class(n.stabilizer.group(), f)?);
            }
            let mut es = Vec::new();
            match node_e_tensor_s {
                Some(list) => {
                    for (k, f) in list.iter().enumerate() {
                        let n = curve
                            .nodes()
                            .get(k)
                            .ok_or_else(|| Error::InvalidSheaf("more node classes than node orbits".into()))?;
                        es.push(f.as_ref().map(|f| build_class(n.stabilizer.group(), f)).transpose()?);
                    }
                }
                None => es.resize(curve.nodes().len(), None),
            }
            SheafSpec::Generic(GenericSheaf {
                rank: *rank,
                pieces,
                marked_fibers: mf,
                node_fibers: nf,
                node_e_tensor_s: es,
                assume_ample: *assume_ample,
            })
        }
    })
}
