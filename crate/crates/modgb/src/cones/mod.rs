//! Cones, cone decompositions, fans, standardness and exactness predicates,
//! degree lifting, Macaulay constants, and the closed Hilbert-polynomial
//! form they determine.

mod exact;
mod pure_power;
mod split;

pub use exact::exact;
pub use pure_power::{pure_power_constants, pure_power_decomposition, DEFAULT_LAYER_LIMIT};
pub use split::{decompose_normal_forms, split, SplitPolicy};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::Error;
use crate::hilbert::{binom_power_basis, HilbertPolynomial};
use crate::module::{FreeModuleSpec, ModuleMonomial};
use crate::monomial::Monomial;

/// C(h, u) = h·K[u]: a monomial pivot times the polynomial subring in the
/// variable subset u. Variables are stored as sorted ascending indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    pub pivot: ModuleMonomial,
    pub vars: Vec<usize>,
}

impl Cone {
    pub fn new(pivot: ModuleMonomial, mut vars: Vec<usize>) -> Self {
        vars.sort_unstable();
        vars.dedup();
        Cone { pivot, vars }
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn degree(&self, spec: &FreeModuleSpec) -> u64 {
        spec.degree_of(&self.pivot)
    }

    /// Monomial membership: u ∈ h·K[vars].
    pub fn contains(&self, u: &ModuleMonomial) -> bool {
        if u.pos != self.pivot.pos {
            return false;
        }
        match self.pivot.mono.div_into(&u.mono) {
            None => false,
            Some(rest) => rest.supported_on(&self.vars),
        }
    }
}

/// A finite list of pairwise-disjoint cones together with the standardness
/// parameter q (stored as 0 when the positive part is empty).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeDecomposition {
    pub cones: Vec<Cone>,
    pub q: u64,
}

impl ConeDecomposition {
    pub fn new(cones: Vec<Cone>, q: u64) -> Self {
        let q = if cones.iter().any(|c| c.dim() > 0) { q } else { 0 };
        ConeDecomposition { cones, q }
    }

    /// deg(P) = max cone degree; None for the empty decomposition.
    pub fn degree(&self, spec: &FreeModuleSpec) -> Option<u64> {
        self.cones.iter().map(|c| c.degree(spec)).max()
    }

    /// deg(P+) over the positive-dimensional cones only.
    pub fn positive_degree(&self, spec: &FreeModuleSpec) -> Option<u64> {
        self.cones
            .iter()
            .filter(|c| c.dim() > 0)
            .map(|c| c.degree(spec))
            .max()
    }

    pub fn positive_cones(&self) -> impl Iterator<Item = &Cone> {
        self.cones.iter().filter(|c| c.dim() > 0)
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }
}

/// The fan of C(h, {x_{j_1} < … < x_{j_t}}): the point cone C(h, ∅) plus
/// the nested cones C(x_{j_i} h, {x_{j_1},…,x_{j_i}}). It is a
/// (deg(C)+1)-standard decomposition of C.
pub fn fan(cone: &Cone) -> Vec<Cone> {
    let nvars = cone.pivot.mono.nvars();
    let mut out = Vec::with_capacity(cone.dim() + 1);
    out.push(Cone::new(cone.pivot.clone(), Vec::new()));
    for (i, &v) in cone.vars.iter().enumerate() {
        out.push(Cone::new(
            cone.pivot.mul_mono(&Monomial::var(nvars, v)),
            cone.vars[..=i].to_vec(),
        ));
    }
    out
}

/// Definition check: no positive-dimensional cone below degree q, and every
/// degree from q up to deg(C) is witnessed by a cone of dimension >= dim(C).
pub fn is_q_standard(spec: &FreeModuleSpec, p: &ConeDecomposition, q: u64) -> bool {
    use std::collections::BTreeMap;
    let info: Vec<(u64, usize)> = p
        .cones
        .iter()
        .map(|c| (c.degree(spec), c.dim()))
        .collect();
    let mut max_dim_at: BTreeMap<u64, usize> = BTreeMap::new();
    for &(d, dim) in &info {
        let slot = max_dim_at.entry(d).or_insert(0);
        *slot = (*slot).max(dim);
    }
    for &(dc, dim) in info.iter().filter(|(_, dim)| *dim > 0) {
        if dc < q {
            return false;
        }
        for d in q..=dc {
            if max_dim_at.get(&d).copied().unwrap_or(0) < dim {
                return false;
            }
        }
    }
    true
}

/// q-exact: q-standard with pairwise distinct degrees among the
/// positive-dimensional cones.
pub fn is_q_exact(spec: &FreeModuleSpec, p: &ConeDecomposition, q: u64) -> bool {
    if !is_q_standard(spec, p, q) {
        return false;
    }
    let mut degs: Vec<u64> = p.positive_cones().map(|c| c.degree(spec)).collect();
    degs.sort_unstable();
    degs.windows(2).all(|w| w[0] != w[1])
}

/// Lift a q-standard decomposition to a d-standard one (d >= q) by fanning
/// the degree-q slice and repeating. Point cones map to themselves, so only
/// positive cones are rewritten. Degrees never decrease.
pub fn lift_to_d_standard(
    spec: &FreeModuleSpec,
    p: &ConeDecomposition,
    q: u64,
    d: u64,
) -> Result<ConeDecomposition, Error> {
    if d < q {
        return Err(Error::InvalidInput(format!(
            "cannot lift a {q}-standard decomposition down to {d}"
        )));
    }
    if p.positive_cones().next().is_none() {
        return Ok(p.clone());
    }
    let mut cones = p.cones.clone();
    for cur in q..d {
        let (slice, rest): (Vec<Cone>, Vec<Cone>) =
            cones.into_iter().partition(|c| c.degree(spec) == cur);
        let mut next = rest;
        for c in &slice {
            next.extend(fan(c));
        }
        cones = next;
    }
    Ok(ConeDecomposition::new(cones, d))
}

/// The integer vector b_0 >= b_1 >= … >= b_{n+1} = q of a q-exact
/// decomposition: b_k = max({q} ∪ {1 + deg(C) : C ∈ P, dim(C) >= k}).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MacaulayConstants {
    pub b: Vec<u64>,
    pub q: u64,
}

impl MacaulayConstants {
    pub fn b(&self, k: usize) -> u64 {
        self.b[k]
    }
}

pub fn macaulay_constants(
    spec: &FreeModuleSpec,
    p: &ConeDecomposition,
) -> Result<MacaulayConstants, Error> {
    let n = spec.nvars();
    if !is_q_exact(spec, p, p.q) {
        return Err(Error::InvalidInput(
            "Macaulay constants require a q-exact cone decomposition".into(),
        ));
    }
    let mut b = vec![p.q; n + 2];
    for (k, bk) in b.iter_mut().enumerate() {
        for c in &p.cones {
            if c.dim() >= k {
                *bk = (*bk).max(1 + c.degree(spec));
            }
        }
    }
    Ok(MacaulayConstants { b, q: p.q })
}

/// The Hilbert polynomial a q-exact decomposition with constants b attains
/// from degree b_0 on:
/// HP(z) = C(z - b_{n+1} + n, n) - 1 - Σ_{i=1}^{n} C(z - b_i + i - 1, i).
pub fn hp_from_constants(constants: &MacaulayConstants, n: usize) -> HilbertPolynomial {
    let b = &constants.b;
    let mut coeffs = binom_power_basis(n as i64 - b[n + 1] as i64, n);
    coeffs[0] -= BigRational::from_integer(BigInt::one());
    for (i, bi) in b.iter().enumerate().take(n + 1).skip(1) {
        let term = binom_power_basis(i as i64 - 1 - *bi as i64, i);
        for (j, t) in term.iter().enumerate() {
            coeffs[j] -= t;
        }
    }
    HilbertPolynomial::from_power_basis(coeffs)
}
