//! Normal forms, Buchberger's algorithm for submodules of free modules,
//! reduced bases, and initial-module extraction.

use std::collections::BTreeSet;

use crate::module::{FreeModule, ModuleElement, ModuleMonomial};
use crate::monomial::Monomial;
use crate::order::MonomialOrder;

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub elements: Vec<ModuleElement>,
    pub order: MonomialOrder,
    pub reduced: bool,
}

impl GroebnerBasis {
    pub fn max_degree(&self, fm: &FreeModule) -> Option<u64> {
        self.elements.iter().filter_map(|g| fm.degree(g)).max()
    }
}

/// A monomial submodule ⊕_j ⟨B_j⟩ e_j, stored as per-position minimal
/// generator lists. Each B_j is an antichain under divisibility.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialSubmodule {
    per_pos: Vec<Vec<Monomial>>,
}

impl MonomialSubmodule {
    pub fn new(rank: usize) -> Self {
        MonomialSubmodule {
            per_pos: vec![Vec::new(); rank],
        }
    }

    pub fn from_generators(rank: usize, gens: impl IntoIterator<Item = ModuleMonomial>) -> Self {
        let mut per_pos = vec![Vec::new(); rank];
        for g in gens {
            per_pos[g.pos].push(g.mono);
        }
        MonomialSubmodule {
            per_pos: per_pos.into_iter().map(prune_to_antichain).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.per_pos.len()
    }

    pub fn generators_at(&self, pos: usize) -> &[Monomial] {
        &self.per_pos[pos]
    }

    pub fn generators(&self) -> impl Iterator<Item = ModuleMonomial> + '_ {
        self.per_pos.iter().enumerate().flat_map(|(pos, b)| {
            b.iter().map(move |m| ModuleMonomial {
                mono: m.clone(),
                pos,
            })
        })
    }

    pub fn contains(&self, u: &ModuleMonomial) -> bool {
        self.per_pos[u.pos].iter().any(|m| m.divides(&u.mono))
    }

    /// True when position `pos` is all of S (i.e. 1 is a generator).
    pub fn is_full_at(&self, pos: usize) -> bool {
        self.per_pos[pos].iter().any(|m| m.is_one())
    }

    pub fn is_full(&self) -> bool {
        (0..self.rank()).all(|j| self.is_full_at(j))
    }
}

/// Prune a monomial list to its minimal elements under divisibility.
pub fn prune_to_antichain(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.total_degree());
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|kept| kept.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Minimal generators of ⟨B⟩ : x^a, via exponentwise max(b_i - a_i, 0)
/// and antichain pruning.
pub fn monomial_colon(b: &[Monomial], a: &Monomial) -> Vec<Monomial> {
    prune_to_antichain(b.iter().map(|m| m.saturating_div(a)).collect())
}

/// The unique remainder of f under division by G: no monomial of the result
/// is divisible by any leading monomial of G, and f − nf lies in ⟨G⟩.
pub fn normal_form(fm: &FreeModule, f: &ModuleElement, basis: &[ModuleElement]) -> ModuleElement {
    let leads: Vec<(&ModuleElement, &ModuleMonomial)> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| (g, g.leading_monomial().unwrap()))
        .collect();
    let mut work = f.clone();
    let mut remainder: Vec<(crate::field::Scalar, ModuleMonomial)> = Vec::new();
    while let Some((c, u)) = work.leading().map(|(c, u)| (c.clone(), u.clone())) {
        match leads.iter().find(|(_, lm)| lm.divides(&u)) {
            Some((g, lm)) => {
                let m = lm.mono.div_into(&u.mono).unwrap();
                let factor = c.div(g.leading_coeff().unwrap());
                work = fm.sub(&work, &fm.term_mul(&factor, &m, g));
            }
            None => {
                // move the irreducible leading term to the remainder
                remainder.push((c, u));
                let rest = work.terms()[1..].to_vec();
                work = fm.element_from_terms(rest);
            }
        }
    }
    fm.element_from_terms(remainder)
}

fn spair(fm: &FreeModule, f: &ModuleElement, g: &ModuleElement) -> Option<ModuleElement> {
    let (fc, fu) = f.leading()?;
    let (gc, gu) = g.leading()?;
    if fu.pos != gu.pos {
        return None;
    }
    let l = fu.mono.lcm(&gu.mono);
    let mf = fu.mono.div_into(&l).unwrap();
    let mg = gu.mono.div_into(&l).unwrap();
    // cross-multiplied to avoid rational blowup; content is normalized after
    Some(fm.sub(
        &fm.term_mul(gc, &mf, f),
        &fm.term_mul(fc, &mg, g),
    ))
}

/// True when every term of f lives in a single fixed position.
fn single_position(f: &ModuleElement) -> bool {
    let mut it = f.terms().iter().map(|(_, u)| u.pos);
    match it.next() {
        None => true,
        Some(p) => it.all(|q| q == p),
    }
}

/// Buchberger's algorithm. S-pairs are formed only between elements whose
/// leading monomials share a basis position; selection is by lowest lcm
/// degree first. The coprimality criterion is applied only when both
/// elements lie entirely in the shared position (where the ideal-case proof
/// applies verbatim); the chain criterion is applied in general.
pub fn buchberger(fm: &FreeModule, gens: &[ModuleElement]) -> GroebnerBasis {
    let mut basis: Vec<ModuleElement> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| fm.normalize_content(g))
        .collect();

    let lcm_of = |basis: &[ModuleElement], i: usize, j: usize| -> Option<(Monomial, u64)> {
        let ui = basis[i].leading_monomial().unwrap();
        let uj = basis[j].leading_monomial().unwrap();
        if ui.pos != uj.pos {
            return None;
        }
        let l = ui.mono.lcm(&uj.mono);
        let d = l.total_degree() + fm.spec.basis_degree(ui.pos);
        Some((l, d))
    };

    // (lcm degree, i, j) with i < j
    let mut pending: BTreeSet<(u64, usize, usize)> = BTreeSet::new();
    let mut handled: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if let Some((_, d)) = lcm_of(&basis, i, j) {
                pending.insert((d, i, j));
            }
        }
    }

    while let Some(&(deg, i, j)) = pending.iter().next() {
        pending.remove(&(deg, i, j));
        handled.insert((i, j));
        let (lcm, _) = lcm_of(&basis, i, j).unwrap();

        let ui = basis[i].leading_monomial().unwrap();
        let uj = basis[j].leading_monomial().unwrap();
        if ui.mono.is_coprime(&uj.mono)
            && single_position(&basis[i])
            && single_position(&basis[j])
        {
            continue;
        }
        // chain criterion: some k with lm(k) | lcm(i,j) and both subpairs done
        let chain = (0..basis.len()).any(|k| {
            if k == i || k == j {
                return false;
            }
            let uk = basis[k].leading_monomial().unwrap();
            if uk.pos != ui.pos || !uk.mono.divides(&lcm) {
                return false;
            }
            let pik = (i.min(k), i.max(k));
            let pjk = (j.min(k), j.max(k));
            handled.contains(&pik) && handled.contains(&pjk)
        });
        if chain {
            continue;
        }

        let s = spair(fm, &basis[i], &basis[j]).unwrap();
        let rem = normal_form(fm, &s, &basis);
        if !rem.is_zero() {
            let rem = fm.normalize_content(&rem);
            let new_idx = basis.len();
            basis.push(rem);
            for k in 0..new_idx {
                if let Some((_, d)) = lcm_of(&basis, k, new_idx) {
                    pending.insert((d, k, new_idx));
                }
            }
        }
    }

    GroebnerBasis {
        elements: basis,
        order: fm.order.clone(),
        reduced: false,
    }
}

/// The reduced Gröbner basis: monic elements, no monomial of any element in
/// the initial module of the others, sorted by leading monomial ascending.
/// The result is unique for the pair (module, order).
pub fn reduce(fm: &FreeModule, gb: &GroebnerBasis) -> GroebnerBasis {
    // minimalize: keep only elements whose lead is not divisible by another kept lead
    let mut elems: Vec<ModuleElement> = gb.elements.iter().filter(|g| !g.is_zero()).cloned().collect();
    elems.sort_by(|a, b| {
        fm.cmp_mm(
            a.leading_monomial().unwrap(),
            b.leading_monomial().unwrap(),
        )
    });
    let mut minimal: Vec<ModuleElement> = Vec::new();
    for g in elems {
        let lm = g.leading_monomial().unwrap();
        if !minimal
            .iter()
            .any(|h| h.leading_monomial().unwrap().divides(lm))
        {
            minimal.push(g);
        }
    }

    // tail-reduce each element against the others until stable
    loop {
        let mut changed = false;
        for i in 0..minimal.len() {
            let others: Vec<ModuleElement> = minimal
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i)
                .map(|(_, g)| g.clone())
                .collect();
            let old = minimal[i].clone();
            let lead = fm.monomial_elem(old.leading_monomial().unwrap().clone());
            let tail = fm.sub(&fm.make_monic(&old), &lead);
            let new_tail = normal_form(fm, &tail, &others);
            let new = fm.add(&lead, &new_tail);
            if new != fm.make_monic(&old) {
                changed = true;
            }
            minimal[i] = new;
        }
        if !changed {
            break;
        }
    }

    minimal.sort_by(|a, b| {
        fm.cmp_mm(
            a.leading_monomial().unwrap(),
            b.leading_monomial().unwrap(),
        )
    });
    GroebnerBasis {
        elements: minimal,
        order: fm.order.clone(),
        reduced: true,
    }
}

pub fn reduced_groebner_basis(fm: &FreeModule, gens: &[ModuleElement]) -> GroebnerBasis {
    reduce(fm, &buchberger(fm, gens))
}

/// The minimal monomial generators of in(M) per position.
pub fn initial_module(fm: &FreeModule, gb: &GroebnerBasis) -> MonomialSubmodule {
    MonomialSubmodule::from_generators(
        fm.spec.rank(),
        gb.elements
            .iter()
            .filter_map(|g| g.leading_monomial().cloned()),
    )
}

/// Check the defining property: every S-pair reduces to zero and every
/// candidate element reduces to zero against the basis. Used as an
/// independent certificate, e.g. after dehomogenizing.
pub fn is_groebner_basis(fm: &FreeModule, basis: &[ModuleElement]) -> bool {
    let nonzero: Vec<ModuleElement> = basis.iter().filter(|g| !g.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        return true;
    }
    for i in 0..nonzero.len() {
        for j in i + 1..nonzero.len() {
            if let Some(s) = spair(fm, &nonzero[i], &nonzero[j]) {
                if !normal_form(fm, &s, &nonzero).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

#[allow(clippy::needless_range_loop)]
fn _lint_anchor() {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::module::FreeModuleSpec;
    use crate::order::{PositionStrategy, RingOrder};
    use num_bigint::BigInt;

    fn fm_xy() -> FreeModule {
        let spec = FreeModuleSpec::new(
            vec!["x".into(), "y".into()],
            vec![("e1".into(), 0)],
            FieldSpec::Rationals,
        )
        .unwrap();
        FreeModule::new(
            spec,
            MonomialOrder::new(RingOrder::GrevLex, PositionStrategy::Pot, 1),
        )
    }

    fn elem(fm: &FreeModule, terms: &[(i64, Vec<u32>, usize)]) -> ModuleElement {
        fm.element_from_terms(
            terms
                .iter()
                .map(|(c, e, p)| {
                    (
                        fm.spec.field().from_integer(&BigInt::from(*c)),
                        ModuleMonomial {
                            mono: Monomial::from_exps(e.clone()),
                            pos: *p,
                        },
                    )
                })
                .collect(),
        )
    }

    #[test]
    fn normal_form_divisible() {
        let fm = fm_xy();
        let f = elem(&fm, &[(1, vec![2, 0], 0)]);
        let g = elem(&fm, &[(1, vec![1, 0], 0)]);
        assert!(normal_form(&fm, &f, &[g]).is_zero());
    }

    #[test]
    fn normal_form_irreducible() {
        let fm = fm_xy();
        let f = elem(&fm, &[(1, vec![0, 1], 0)]);
        let g = elem(&fm, &[(1, vec![1, 0], 0)]);
        assert_eq!(normal_form(&fm, &f, &[g]), f);
    }

    #[test]
    fn normal_form_division_trace() {
        // f = x^2 e1 + x y e1 against G = {x e1 - y e1}: remainder 2 y^2 e1
        let fm = fm_xy();
        let f = elem(&fm, &[(1, vec![2, 0], 0), (1, vec![1, 1], 0)]);
        let g = elem(&fm, &[(1, vec![1, 0], 0), (-1, vec![0, 1], 0)]);
        let nf = normal_form(&fm, &f, std::slice::from_ref(&g));
        assert_eq!(nf, elem(&fm, &[(2, vec![0, 2], 0)]));
        // f - nf must reduce to zero against {g} as well
        let diff = fm.sub(&f, &nf);
        assert!(normal_form(&fm, &diff, &[g]).is_zero());
    }

    #[test]
    fn buchberger_single_generator() {
        let fm = fm_xy();
        let g = elem(&fm, &[(2, vec![1, 0], 0), (2, vec![0, 1], 0)]);
        let gb = reduced_groebner_basis(&fm, &[g]);
        assert_eq!(gb.elements.len(), 1);
        let e = &gb.elements[0];
        assert!(e.leading_coeff().unwrap().is_one());
        assert_eq!(e.num_terms(), 2);
    }

    #[test]
    fn buchberger_monomial_generators() {
        let fm = fm_xy();
        let gens = vec![elem(&fm, &[(1, vec![1, 0], 0)]), elem(&fm, &[(1, vec![0, 1], 0)])];
        let gb = reduced_groebner_basis(&fm, &gens);
        assert_eq!(gb.elements.len(), 2);
        assert!(is_groebner_basis(&fm, &gb.elements));
    }

    #[test]
    fn buchberger_derived_case() {
        // gens {x^2 e1 - y e1, x y e1 - e1} under grevlex: the reduced
        // Gröbner basis is {y^2 e1 - x e1, x y e1 - e1, x^2 e1 - y e1}
        // (hand Buchberger trace, frozen).
        let fm = fm_xy();
        let g1 = elem(&fm, &[(1, vec![2, 0], 0), (-1, vec![0, 1], 0)]);
        let g2 = elem(&fm, &[(1, vec![1, 1], 0), (-1, vec![0, 0], 0)]);
        let gb = reduced_groebner_basis(&fm, &[g1.clone(), g2.clone()]);
        let expect = vec![
            elem(&fm, &[(1, vec![0, 2], 0), (-1, vec![1, 0], 0)]),
            elem(&fm, &[(1, vec![1, 1], 0), (-1, vec![0, 0], 0)]),
            elem(&fm, &[(1, vec![2, 0], 0), (-1, vec![0, 1], 0)]),
        ];
        assert_eq!(gb.elements, expect);
        assert!(is_groebner_basis(&fm, &gb.elements));
        // input generators reduce to zero modulo the output
        for g in [g1, g2] {
            assert!(normal_form(&fm, &g, &gb.elements).is_zero());
        }
    }

    #[test]
    fn product_criterion_not_misapplied_across_positions() {
        // f = x e1 + y e2, g = y e1 + x e2: coprime leads in the same
        // position, but the S-pair does not reduce to zero, so the pair must
        // not be skipped.
        let spec = FreeModuleSpec::new(
            vec!["x".into(), "y".into()],
            vec![("e1".into(), 0), ("e2".into(), 0)],
            FieldSpec::Rationals,
        )
        .unwrap();
        let fm = FreeModule::new(
            spec,
            MonomialOrder::new(RingOrder::GrevLex, PositionStrategy::Pot, 2),
        );
        let f = elem(&fm, &[(1, vec![1, 0], 0), (1, vec![0, 1], 1)]);
        let g = elem(&fm, &[(1, vec![0, 1], 0), (1, vec![1, 0], 1)]);
        let gb = reduced_groebner_basis(&fm, &[f, g]);
        assert!(is_groebner_basis(&fm, &gb.elements));
        // x^2 e2 - y^2 e2 is in the module, so it must reduce to zero
        let h = elem(&fm, &[(1, vec![2, 0], 1), (-1, vec![0, 2], 1)]);
        assert!(normal_form(&fm, &h, &gb.elements).is_zero());
    }

    #[test]
    fn reduce_removes_redundant_and_normalizes() {
        let fm = fm_xy();
        // {x e1, x^2 e1} -> {x e1}
        let gb = GroebnerBasis {
            elements: vec![elem(&fm, &[(1, vec![1, 0], 0)]), elem(&fm, &[(1, vec![2, 0], 0)])],
            order: fm.order.clone(),
            reduced: false,
        };
        let red = reduce(&fm, &gb);
        assert_eq!(red.elements, vec![elem(&fm, &[(1, vec![1, 0], 0)])]);

        // {2x e1} -> {x e1}
        let gb = GroebnerBasis {
            elements: vec![elem(&fm, &[(2, vec![1, 0], 0)])],
            order: fm.order.clone(),
            reduced: false,
        };
        let red = reduce(&fm, &gb);
        assert_eq!(red.elements, vec![elem(&fm, &[(1, vec![1, 0], 0)])]);

        // {x e1 + y e1, y e1} -> {x e1, y e1}
        let gb = GroebnerBasis {
            elements: vec![
                elem(&fm, &[(1, vec![1, 0], 0), (1, vec![0, 1], 0)]),
                elem(&fm, &[(1, vec![0, 1], 0)]),
            ],
            order: fm.order.clone(),
            reduced: false,
        };
        let red = reduce(&fm, &gb);
        assert_eq!(
            red.elements,
            vec![elem(&fm, &[(1, vec![0, 1], 0)]), elem(&fm, &[(1, vec![1, 0], 0)])]
        );
    }

    #[test]
    fn initial_module_minimalized() {
        let fm = fm_xy();
        let gb = GroebnerBasis {
            elements: vec![elem(&fm, &[(1, vec![1, 0], 0)]), elem(&fm, &[(1, vec![2, 0], 0)])],
            order: fm.order.clone(),
            reduced: false,
        };
        let init = initial_module(&fm, &gb);
        assert_eq!(init.generators_at(0), &[Monomial::from_exps(vec![1, 0])]);
    }

    #[test]
    fn colon_examples() {
        // B = {x^2 y}, a = x -> {x y}
        let b = vec![Monomial::from_exps(vec![2, 1])];
        let a = Monomial::from_exps(vec![1, 0]);
        assert_eq!(monomial_colon(&b, &a), vec![Monomial::from_exps(vec![1, 1])]);
        // B = {x}, a = x -> {1}
        let b = vec![Monomial::from_exps(vec![1, 0])];
        assert_eq!(monomial_colon(&b, &a), vec![Monomial::from_exps(vec![0, 0])]);
        // B = {x^2, y}, a = y^2 -> {1}
        let b = vec![Monomial::from_exps(vec![2, 0]), Monomial::from_exps(vec![0, 1])];
        let a = Monomial::from_exps(vec![0, 2]);
        assert_eq!(monomial_colon(&b, &a), vec![Monomial::from_exps(vec![0, 0])]);
    }
}
