//! The recursive SPLIT procedure and the per-position decomposition of the
//! normal forms of a monomial submodule.

use super::{lift_to_d_standard, Cone, ConeDecomposition};
use crate::error::Error;
use crate::groebner::{monomial_colon, MonomialSubmodule};
use crate::module::{FreeModuleSpec, ModuleMonomial};
use crate::monomial::Monomial;

/// Deterministic variable-choice policy: which subset is preferred among
/// the maximum-cardinality candidates for s, and which variable of u \ s
/// becomes the branch variable. Downstream Macaulay constants are
/// choice-independent, which the verification suite exercises by running
/// both policies.
///
/// The subset s must have maximum cardinality among the B-free subsets of
/// u, not merely be non-extendable: the pivot cone produced by the first
/// branch then has the maximum free-set dimension, which is what witnesses
/// the low degrees in the standardness property of Q. A merely maximal s
/// can leave a higher-dimensional cone from the second branch without a
/// witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitPolicy {
    AscendingVars,
    DescendingVars,
}

impl SplitPolicy {
    fn iter<'a>(&self, u: &'a [usize]) -> Box<dyn Iterator<Item = usize> + 'a> {
        match self {
            SplitPolicy::AscendingVars => Box::new(u.iter().copied()),
            SplitPolicy::DescendingVars => Box::new(u.iter().rev().copied()),
        }
    }

    fn rank(&self, v: usize) -> usize {
        match self {
            SplitPolicy::AscendingVars => v,
            SplitPolicy::DescendingVars => usize::MAX - v,
        }
    }
}

fn any_supported_on(b: &[Monomial], vars: &[usize]) -> bool {
    b.iter().any(|m| m.supported_on(vars))
}

/// The B-free subset of u with the most variables; ties go to the subset
/// whose policy-ranked index list is lexicographically least. Exhaustive
/// over 2^|u| subsets, which is fine at the variable counts this library
/// targets.
fn max_free_subset(b: &[Monomial], u: &[usize], policy: SplitPolicy) -> Vec<usize> {
    let mut best: Vec<usize> = Vec::new();
    let mut best_key: Vec<usize> = Vec::new();
    for mask in 0u32..(1 << u.len()) {
        let subset: Vec<usize> = u
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect();
        if any_supported_on(b, &subset) {
            continue;
        }
        let mut key: Vec<usize> = subset.iter().map(|&v| policy.rank(v)).collect();
        key.sort_unstable();
        if subset.len() > best.len() || (subset.len() == best.len() && key < best_key) {
            best = subset;
            best_key = key;
        }
    }
    best
}

/// Split the cone h·K[u] relative to the monomial submodule M, where B
/// generates M :_S h. Every cone of P lies inside M; every cone of Q meets
/// M only in 0; Q is deg(h)-standard.
pub fn split(
    h: &ModuleMonomial,
    u: &[usize],
    msub: &MonomialSubmodule,
    b: &[Monomial],
    policy: SplitPolicy,
) -> (Vec<Cone>, Vec<Cone>) {
    debug_assert!(
        b.iter().all(|m| msub.contains(&h.mul_mono(m))),
        "B must generate M : h"
    );
    let mut p = Vec::new();
    let mut q = Vec::new();
    let mut u: Vec<usize> = u.to_vec();
    u.sort_unstable();
    split_rec(h.clone(), u, b.to_vec(), policy, &mut p, &mut q);
    (p, q)
}

fn split_rec(
    h: ModuleMonomial,
    u: Vec<usize>,
    b: Vec<Monomial>,
    policy: SplitPolicy,
    p: &mut Vec<Cone>,
    q: &mut Vec<Cone>,
) {
    if b.iter().any(|m| m.is_one()) {
        p.push(Cone::new(h, u));
        return;
    }
    if !any_supported_on(&b, &u) {
        q.push(Cone::new(h, u));
        return;
    }
    let s = max_free_subset(&b, &u, policy);
    let xi = policy
        .iter(&u)
        .find(|v| !s.contains(v))
        .expect("s is a proper subset here");

    let u_minus: Vec<usize> = u.iter().copied().filter(|&v| v != xi).collect();
    split_rec(h.clone(), u_minus, b.clone(), policy, p, q);

    let nvars = h.mono.nvars();
    let b_colon = monomial_colon(&b, &Monomial::var(nvars, xi));
    let h_next = h.mul_mono(&Monomial::var(nvars, xi));
    split_rec(h_next, u, b_colon, policy, p, q);
}

/// Top-level driver: split each position of in(M), lift every piece to
/// an l-standard decomposition, and take the union. The result decomposes
/// the normal forms N_M of the whole module.
pub fn decompose_normal_forms(
    spec: &FreeModuleSpec,
    msub: &MonomialSubmodule,
    policy: SplitPolicy,
) -> Result<ConeDecomposition, Error> {
    if msub.is_full() {
        return Err(Error::FullModule);
    }
    let n = spec.nvars();
    let l = spec.max_basis_degree();
    let all_vars: Vec<usize> = (0..n).collect();
    let mut cones = Vec::new();
    for pos in 0..spec.rank() {
        if msub.is_full_at(pos) {
            continue;
        }
        let e = ModuleMonomial::basis(n, pos);
        let (_, qj) = split(&e, &all_vars, msub, msub.generators_at(pos), policy);
        let qj = ConeDecomposition::new(qj, spec.basis_degree(pos));
        let lifted = lift_to_d_standard(spec, &qj, spec.basis_degree(pos), l)?;
        cones.extend(lifted.cones);
    }
    Ok(ConeDecomposition::new(cones, l))
}
