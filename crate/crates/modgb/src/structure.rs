//! Presentation matrices, zeroth Fitting ideals, randomized regular-sequence
//! extraction, and homogenization.

use crate::cones::{decompose_normal_forms, SplitPolicy};
use crate::error::Error;
use crate::field::{FieldSpec, Scalar};
use crate::groebner::{initial_module, reduced_groebner_basis};
use crate::hilbert::{dimension, hs_from_cones};
use crate::module::{FreeModule, FreeModuleSpec, ModuleElement, ModuleMonomial};
use crate::monomial::Monomial;
use crate::order::{MonomialOrder, PositionStrategy, RingOrder};
use crate::poly::Polynomial;
use crate::rng::Rng;

/// An m×s matrix of ring elements with f_i = Σ_j a_{ji} e_j; column i
/// reconstructs generator f_i exactly.
#[derive(Clone, Debug)]
pub struct PresentationMatrix {
    /// entries[j][i] = a_{ji}: row j (basis position), column i (generator)
    pub entries: Vec<Vec<Polynomial>>,
    pub rows: usize,
    pub cols: usize,
}

pub fn presentation(fm: &FreeModule, gens: &[ModuleElement]) -> PresentationMatrix {
    let m = fm.spec.rank();
    let s = gens.len();
    let mut entries = vec![vec![Polynomial::zero(); s]; m];
    for (i, g) in gens.iter().enumerate() {
        for (c, u) in g.terms() {
            let cell = &mut entries[u.pos][i];
            *cell = cell.add(&Polynomial::monomial(c.clone(), u.mono.clone()));
        }
    }
    PresentationMatrix {
        entries,
        rows: m,
        cols: s,
    }
}

/// Determinant by fraction-free Gaussian elimination (Bareiss) with row
/// pivoting; all intermediate divisions are exact.
pub fn determinant(mat: &[Vec<Polynomial>], nvars: usize, field: &FieldSpec) -> Polynomial {
    let n = mat.len();
    if n == 0 {
        return Polynomial::constant(field.one(), nvars);
    }
    let mut m: Vec<Vec<Polynomial>> = mat.to_vec();
    let mut sign_negative = false;
    let mut prev = Polynomial::constant(field.one(), nvars);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign_negative = !sign_negative;
                }
                None => return Polynomial::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss division is exact by construction");
            }
            m[i][k] = Polynomial::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_negative {
        det.neg()
    } else {
        det
    }
}

fn column_subsets(s: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, s: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..s {
            if s - i < m - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, s, m, cur, out);
            cur.pop();
        }
    }
    rec(0, s, m, &mut cur, &mut out);
    out
}

/// Generators of the zeroth Fitting ideal: all m×m minors of the
/// presentation matrix, zero minors dropped, duplicates up to scalar
/// removed, sorted by degree descending. With `interreduce` set,
/// ideal-redundant minors are also dropped (membership tested against a
/// Gröbner basis of the ones kept).
///
/// Fewer columns than rows means there are no m×m minors and Fitt_0 = 0,
/// returned as the empty list.
pub fn fitting0(
    pm: &PresentationMatrix,
    nvars: usize,
    field: &FieldSpec,
    interreduce: bool,
) -> Vec<Polynomial> {
    if pm.cols < pm.rows {
        return Vec::new();
    }
    let mut minors: Vec<Polynomial> = Vec::new();
    for cols in column_subsets(pm.cols, pm.rows) {
        let sub: Vec<Vec<Polynomial>> = (0..pm.rows)
            .map(|j| cols.iter().map(|&i| pm.entries[j][i].clone()).collect())
            .collect();
        let det = determinant(&sub, nvars, field);
        if !det.is_zero() {
            minors.push(normalize_poly(&det, nvars, field));
        }
    }
    minors.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.terms().len().cmp(&b.terms().len()))
    });
    minors.dedup();
    if interreduce && minors.len() > 1 {
        let fm1 = ring_as_module(field, nvars);
        let mut kept: Vec<Polynomial> = Vec::new();
        for p in minors {
            if kept.is_empty() {
                kept.push(p);
                continue;
            }
            let gens: Vec<ModuleElement> =
                kept.iter().map(|q| poly_to_element(&fm1, q)).collect();
            let gb = reduced_groebner_basis(&fm1, &gens);
            let rem =
                crate::groebner::normal_form(&fm1, &poly_to_element(&fm1, &p), &gb.elements);
            if !rem.is_zero() {
                kept.push(p);
            }
        }
        minors = kept;
    }
    minors.sort_by_key(|p| std::cmp::Reverse(p.degree()));
    minors
}

fn normalize_poly(p: &Polynomial, nvars: usize, field: &FieldSpec) -> Polynomial {
    let fm1 = ring_as_module(field, nvars);
    let e = poly_to_element(&fm1, p);
    element_to_poly(&fm1.normalize_content(&e))
}

/// The ring S viewed as a rank-1 free module with a degree-compatible order
/// (grevlex), the route used for ideal-level Gröbner computations.
pub fn ring_as_module(field: &FieldSpec, nvars: usize) -> FreeModule {
    let vars = (0..nvars).map(|i| format!("x{}", i + 1)).collect();
    let spec = FreeModuleSpec::new(vars, vec![("e".into(), 0)], *field)
        .expect("rank-1 module is well-formed");
    FreeModule::new(
        spec,
        MonomialOrder::new(RingOrder::GrevLex, PositionStrategy::Top, 1),
    )
}

pub fn poly_to_element(fm: &FreeModule, p: &Polynomial) -> ModuleElement {
    fm.element_from_terms(
        p.terms()
            .iter()
            .map(|(c, m)| {
                (
                    c.clone(),
                    ModuleMonomial {
                        mono: m.clone(),
                        pos: 0,
                    },
                )
            })
            .collect(),
    )
}

pub fn element_to_poly(e: &ModuleElement) -> Polynomial {
    Polynomial::from_terms(
        e.terms()
            .iter()
            .map(|(c, u)| (c.clone(), u.mono.clone()))
            .collect(),
    )
}

/// p · e_j as a module element.
pub fn poly_times_basis(fm: &FreeModule, p: &Polynomial, pos: usize) -> ModuleElement {
    fm.element_from_terms(
        p.terms()
            .iter()
            .map(|(c, m)| {
                (
                    c.clone(),
                    ModuleMonomial {
                        mono: m.clone(),
                        pos,
                    },
                )
            })
            .collect(),
    )
}

/// Krull dimension of S/I from the standard monomials of in(I) under a
/// degree-compatible order. None for the unit ideal.
pub fn ideal_dimension(field: &FieldSpec, nvars: usize, gens: &[Polynomial]) -> Option<usize> {
    let fm1 = ring_as_module(field, nvars);
    let elems: Vec<ModuleElement> = gens.iter().map(|p| poly_to_element(&fm1, p)).collect();
    let gb = reduced_groebner_basis(&fm1, &elems);
    let init = initial_module(&fm1, &gb);
    match decompose_normal_forms(&fm1.spec, &init, SplitPolicy::AscendingVars) {
        Err(_) => None,
        Ok(q) => {
            let hs = hs_from_cones(&fm1.spec, &q);
            dimension(&hs).ok()
        }
    }
}

/// Krull dimension of F/M. Grading shifts do not change the dimension, so
/// the computation runs over the shift-free module under a
/// degree-compatible order regardless of the problem's own order.
pub fn module_dimension(fm: &FreeModule, gens: &[ModuleElement]) -> Result<usize, Error> {
    let flat = FreeModule::new(
        fm.spec.ungraded(),
        MonomialOrder::new(RingOrder::GrevLex, PositionStrategy::Top, fm.spec.rank()),
    );
    let gens: Vec<ModuleElement> = gens
        .iter()
        .map(|g| flat.element_from_terms(g.terms().to_vec()))
        .collect();
    let gb = reduced_groebner_basis(&flat, &gens);
    let init = initial_module(&flat, &gb);
    if init.is_full() {
        return Err(Error::FullModule);
    }
    let q = decompose_normal_forms(&flat.spec, &init, SplitPolicy::AscendingVars)?;
    let hs = hs_from_cones(&flat.spec, &q);
    dimension(&hs)
}

/// Verified homogeneous regular sequence inside an ideal.
#[derive(Clone, Debug)]
pub struct RegularSequenceCertificate {
    pub elements: Vec<Polynomial>,
    /// dim S/(g_1,…,g_i) for each prefix; equals n - i when verified.
    pub prefix_dims: Vec<usize>,
}

const COEFF_BOUND: i64 = 100;
const RETRY_BUDGET: usize = 20;

fn random_scalar(field: &FieldSpec, rng: &mut Rng) -> Scalar {
    match field {
        FieldSpec::Rationals => field.from_integer(&num_bigint::BigInt::from(
            rng.range_i64(-COEFF_BOUND, COEFF_BOUND),
        )),
        FieldSpec::Prime(p) => field.from_integer(&num_bigint::BigInt::from(rng.below(*p))),
    }
}

fn random_linear_form(field: &FieldSpec, nvars: usize, rng: &mut Rng) -> Polynomial {
    loop {
        let terms: Vec<(Scalar, Monomial)> = (0..nvars)
            .map(|i| (random_scalar(field, rng), Monomial::var(nvars, i)))
            .collect();
        let p = Polynomial::from_terms(terms);
        if !p.is_zero() {
            return p;
        }
    }
}

fn poly_pow(p: &Polynomial, e: u64, nvars: usize, field: &FieldSpec) -> Polynomial {
    let mut acc = Polynomial::constant(field.one(), nvars);
    for _ in 0..e {
        acc = acc.mul(p);
    }
    acc
}

/// Draw random homogeneous combinations g_1,…,g_k of the generators, padded
/// to the right degrees by powers of random linear forms, and verify each
/// prefix drops the dimension by exactly one. Over a small field the search
/// may genuinely fail; the error says so instead of proceeding silently.
pub fn find_regular_sequence(
    field: &FieldSpec,
    nvars: usize,
    gens: &[Polynomial],
    target_len: usize,
    seed: u64,
) -> Result<RegularSequenceCertificate, Error> {
    if target_len == 0 {
        return Ok(RegularSequenceCertificate {
            elements: Vec::new(),
            prefix_dims: Vec::new(),
        });
    }
    if gens.iter().any(|p| p.is_zero() || !p.is_homogeneous()) {
        return Err(Error::InvalidInput(
            "regular sequence search needs nonzero homogeneous generators".into(),
        ));
    }
    if gens.len() < target_len {
        return Err(Error::RegularSequenceSearch(format!(
            "{} generators cannot contain a regular sequence of length {}",
            gens.len(),
            target_len
        )));
    }
    let mut degs: Vec<u64> = gens.iter().map(|p| p.degree().unwrap()).collect();
    degs.sort_unstable_by(|a, b| b.cmp(a));

    let mut rng = Rng::new(seed);
    let mut chosen: Vec<Polynomial> = Vec::new();
    let mut dims: Vec<usize> = Vec::new();
    for j in 1..=target_len {
        // degrees come out ascending: d_{target}, …, d_1
        let delta = degs[target_len - j];
        let want_dim = nvars - j;
        let mut found = false;
        for _ in 0..RETRY_BUDGET {
            let mut g = Polynomial::zero();
            for p in gens {
                let pd = p.degree().unwrap();
                if pd > delta {
                    continue;
                }
                let c = random_scalar(field, &mut rng);
                let padded = if pd == delta {
                    p.scalar_mul(&c)
                } else {
                    let ell = random_linear_form(field, nvars, &mut rng);
                    p.scalar_mul(&c)
                        .mul(&poly_pow(&ell, delta - pd, nvars, field))
                };
                g = g.add(&padded);
            }
            if g.is_zero() || g.degree() != Some(delta) || !g.is_homogeneous() {
                continue;
            }
            let mut trial = chosen.clone();
            trial.push(g.clone());
            if ideal_dimension(field, nvars, &trial) == Some(want_dim) {
                chosen.push(g);
                dims.push(want_dim);
                found = true;
                break;
            }
        }
        if !found {
            return Err(Error::RegularSequenceSearch(format!(
                "no candidate of degree {delta} dropped the dimension to {want_dim} after {RETRY_BUDGET} trials; \
                 probable cause: small coefficient field or a dimension hypothesis that does not hold"
            )));
        }
    }
    Ok(RegularSequenceCertificate {
        elements: chosen,
        prefix_dims: dims,
    })
}

/// First variable name not already used by the ring.
pub fn fresh_tvar(spec: &FreeModuleSpec) -> String {
    if !spec.vars().iter().any(|v| v == "t") {
        return "t".to_string();
    }
    (0..)
        .map(|i| format!("t{}", i))
        .find(|cand| !spec.vars().iter().any(|v| v == cand))
        .unwrap()
}

/// The homogenized ambient module F^h with the extended order.
pub fn homogenized_module(fm: &FreeModule) -> Result<FreeModule, Error> {
    let tvar = fresh_tvar(&fm.spec);
    Ok(FreeModule::new(
        fm.spec.homogenized(&tvar)?,
        fm.order.extended(),
    ))
}

/// f^h = Σ f_j t^{deg f - deg f_j}, a homogeneous element of F^h with
/// degree deg(f). Undefined for f = 0.
pub fn homogenize(
    fm: &FreeModule,
    ext: &FreeModule,
    f: &ModuleElement,
) -> Result<ModuleElement, Error> {
    if f.is_zero() {
        return Err(Error::HomogenizeZero);
    }
    let total = fm.degree(f).unwrap();
    let terms = f
        .terms()
        .iter()
        .map(|(c, u)| {
            let pad = total - fm.spec.degree_of(u);
            (
                c.clone(),
                ModuleMonomial {
                    mono: u.mono.extend(u32::try_from(pad).expect("padding fits u32")),
                    pos: u.pos,
                },
            )
        })
        .collect();
    Ok(ext.element_from_terms(terms))
}

/// Substitute t = 1 and renormalize under the base order.
pub fn dehomogenize(base: &FreeModule, f: &ModuleElement) -> ModuleElement {
    base.element_from_terms(
        f.terms()
            .iter()
            .map(|(c, u)| {
                (
                    c.clone(),
                    ModuleMonomial {
                        mono: u.mono.strip_last(),
                        pos: u.pos,
                    },
                )
            })
            .collect(),
    )
}

pub fn dehomogenize_all(base: &FreeModule, elems: &[ModuleElement]) -> Vec<ModuleElement> {
    elems
        .iter()
        .map(|f| dehomogenize(base, f))
        .filter(|f| !f.is_zero())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn qq() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn c(v: i64) -> Scalar {
        qq().from_integer(&BigInt::from(v))
    }

    fn xypoly(terms: &[(i64, [u32; 2])]) -> Polynomial {
        Polynomial::from_terms(
            terms
                .iter()
                .map(|(k, e)| (c(*k), Monomial::from_exps(e.to_vec())))
                .collect(),
        )
    }

    #[test]
    fn presentation_reconstructs_columns() {
        let spec = FreeModuleSpec::new(
            vec!["x".into(), "y".into()],
            vec![("e1".into(), 0), ("e2".into(), 0)],
            qq(),
        )
        .unwrap();
        let fm = FreeModule::new(
            spec,
            MonomialOrder::new(RingOrder::GrevLex, PositionStrategy::Pot, 2),
        );
        // gens = {x e1 + y e2}
        let g = fm.element_from_terms(vec![
            (c(1), ModuleMonomial { mono: Monomial::var(2, 0), pos: 0 }),
            (c(1), ModuleMonomial { mono: Monomial::var(2, 1), pos: 1 }),
        ]);
        let pm = presentation(&fm, std::slice::from_ref(&g));
        assert_eq!(pm.rows, 2);
        assert_eq!(pm.cols, 1);
        // column reconstructs the generator
        let rebuilt = (0..2).fold(ModuleElement::zero(), |acc, j| {
            fm.add(&acc, &poly_times_basis(&fm, &pm.entries[j][0], j))
        });
        assert_eq!(rebuilt, g);
    }

    #[test]
    fn fitting_diagonal_and_symmetric() {
        let qqf = qq();
        // [[x,0],[0,y]] -> {xy}
        let pm = PresentationMatrix {
            entries: vec![
                vec![xypoly(&[(1, [1, 0])]), Polynomial::zero()],
                vec![Polynomial::zero(), xypoly(&[(1, [0, 1])])],
            ],
            rows: 2,
            cols: 2,
        };
        let f = fitting0(&pm, 2, &qqf, true);
        assert_eq!(f, vec![xypoly(&[(1, [1, 1])])]);

        // [[x,y],[y,x]] -> {x^2 - y^2}
        let pm = PresentationMatrix {
            entries: vec![
                vec![xypoly(&[(1, [1, 0])]), xypoly(&[(1, [0, 1])])],
                vec![xypoly(&[(1, [0, 1])]), xypoly(&[(1, [1, 0])])],
            ],
            rows: 2,
            cols: 2,
        };
        let f = fitting0(&pm, 2, &qqf, true);
        assert_eq!(f, vec![xypoly(&[(1, [2, 0]), (-1, [0, 2])])]);

        // fewer generators than rank: Fitt_0 = 0
        let pm = PresentationMatrix {
            entries: vec![vec![], vec![]],
            rows: 2,
            cols: 0,
        };
        assert!(fitting0(&pm, 2, &qqf, true).is_empty());
    }

    #[test]
    fn determinant_with_pivoting() {
        let qqf = qq();
        // [[0, x], [y, 0]]: det = -xy
        let m = vec![
            vec![Polynomial::zero(), xypoly(&[(1, [1, 0])])],
            vec![xypoly(&[(1, [0, 1])]), Polynomial::zero()],
        ];
        assert_eq!(determinant(&m, 2, &qqf), xypoly(&[(-1, [1, 1])]));
        // singular matrix
        let m = vec![
            vec![xypoly(&[(1, [1, 0])]), xypoly(&[(1, [1, 0])])],
            vec![xypoly(&[(1, [0, 1])]), xypoly(&[(1, [0, 1])])],
        ];
        assert!(determinant(&m, 2, &qqf).is_zero());
    }

    #[test]
    fn ideal_dimension_examples() {
        let qqf = qq();
        // (x^2, y^2) in K[x,y]: dim 0
        let gens = vec![xypoly(&[(1, [2, 0])]), xypoly(&[(1, [0, 2])])];
        assert_eq!(ideal_dimension(&qqf, 2, &gens), Some(0));
        // (x) in K[x,y]: dim 1
        assert_eq!(ideal_dimension(&qqf, 2, &[xypoly(&[(1, [1, 0])])]), Some(1));
        // zero ideal: dim 2
        assert_eq!(ideal_dimension(&qqf, 2, &[]), Some(2));
        // unit ideal: None
        assert_eq!(ideal_dimension(&qqf, 2, &[xypoly(&[(1, [0, 0])])]), None);
    }

    #[test]
    fn regular_sequence_monomial_complete_intersection() {
        let qqf = qq();
        let gens = vec![xypoly(&[(1, [2, 0])]), xypoly(&[(1, [0, 2])])];
        let cert = find_regular_sequence(&qqf, 2, &gens, 2, 11).unwrap();
        assert_eq!(cert.prefix_dims, vec![1, 0]);
        assert_eq!(cert.elements.len(), 2);
        for (k, g) in cert.elements.iter().enumerate() {
            assert!(g.is_homogeneous());
            assert_eq!(g.degree(), Some(2), "element {k} has padded degree");
        }
    }

    #[test]
    fn regular_sequence_squarefree_dim_one() {
        // I = (xy, xz, yz) in K[x,y,z]: dim 1, so a length-2 sequence exists
        let qqf = qq();
        let m3 = |e: [u32; 3]| Monomial::from_exps(e.to_vec());
        let gens = vec![
            Polynomial::monomial(c(1), m3([1, 1, 0])),
            Polynomial::monomial(c(1), m3([1, 0, 1])),
            Polynomial::monomial(c(1), m3([0, 1, 1])),
        ];
        assert_eq!(ideal_dimension(&qqf, 3, &gens), Some(1));
        let cert = find_regular_sequence(&qqf, 3, &gens, 2, 5).unwrap();
        assert_eq!(cert.prefix_dims, vec![2, 1]);
        // empty target is vacuous
        let empty = find_regular_sequence(&qqf, 3, &gens, 0, 5).unwrap();
        assert!(empty.elements.is_empty());
    }

    #[test]
    fn regular_sequence_search_reports_failure() {
        // (xy, x^2 y) = (xy) has height 1, so no length-2 regular sequence
        // exists inside it; the search must exhaust its budget and say why
        let qqf = qq();
        let gens = vec![xypoly(&[(1, [1, 1])]), xypoly(&[(1, [2, 1])])];
        match find_regular_sequence(&qqf, 2, &gens, 2, 3) {
            Err(Error::RegularSequenceSearch(msg)) => {
                assert!(msg.contains("trials"), "{msg}");
            }
            other => panic!("expected a search failure, got {other:?}"),
        }
    }

    #[test]
    fn homogenize_roundtrip() {
        let spec = FreeModuleSpec::new(
            vec!["x".into(), "y".into()],
            vec![("e1".into(), 0), ("e2".into(), 1)],
            qq(),
        )
        .unwrap();
        let fm = FreeModule::new(
            spec,
            MonomialOrder::new(RingOrder::GrevLex, PositionStrategy::Pot, 2),
        );
        let ext = homogenized_module(&fm).unwrap();
        let mm = |e: [u32; 2], p: usize| ModuleMonomial {
            mono: Monomial::from_exps(e.to_vec()),
            pos: p,
        };
        // x^2 e1 + x e1 -> x^2 e1 + x t e1
        let f = fm.element_from_terms(vec![(c(1), mm([2, 0], 0)), (c(1), mm([1, 0], 0))]);
        let fh = homogenize(&fm, &ext, &f).unwrap();
        assert!(ext.is_homogeneous(&fh));
        assert_eq!(ext.degree(&fh), Some(2));
        assert_eq!(dehomogenize(&fm, &fh), f);

        // already homogeneous under the grading: unchanged (t-free)
        let g = fm.element_from_terms(vec![(c(1), mm([1, 0], 0)), (c(1), mm([0, 0], 1))]);
        let gh = homogenize(&fm, &ext, &g).unwrap();
        assert!(gh.terms().iter().all(|(_, u)| u.mono.exp(2) == 0));
        assert_eq!(dehomogenize(&fm, &gh), g);

        // zero element rejected
        assert!(homogenize(&fm, &ext, &ModuleElement::zero()).is_err());
    }
}
