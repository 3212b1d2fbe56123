//! Graded free modules over the polynomial ring and their elements.

use std::cmp::Ordering;
use std::fmt;

use crate::error::Error;
use crate::field::{FieldSpec, Scalar};
use crate::monomial::Monomial;
use crate::order::MonomialOrder;

/// The ambient data of a graded free module F = S e_1 ⊕ … ⊕ S e_m over
/// S = K[x_1,…,x_n], with deg(e_j) ≥ 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModuleSpec {
    vars: Vec<String>,
    basis_names: Vec<String>,
    basis_degrees: Vec<u64>,
    field: FieldSpec,
}

impl FreeModuleSpec {
    pub fn new(
        vars: Vec<String>,
        basis: Vec<(String, u64)>,
        field: FieldSpec,
    ) -> Result<Self, Error> {
        if vars.is_empty() {
            return Err(Error::InvalidInput("at least one ring variable required".into()));
        }
        if basis.is_empty() {
            return Err(Error::InvalidInput("at least one basis element required".into()));
        }
        field.validate()?;
        let (basis_names, basis_degrees) = basis.into_iter().unzip();
        Ok(FreeModuleSpec {
            vars,
            basis_names,
            basis_degrees,
            field,
        })
    }

    /// Non-fatal conditions worth surfacing to the user.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.basis_degrees.iter().min().copied().unwrap_or(0) != 0 {
            out.push(
                "no basis element has degree 0; shifting all basis degrees down keeps the module unchanged"
                    .to_string(),
            );
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn rank(&self) -> usize {
        self.basis_names.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn basis_degrees(&self) -> &[u64] {
        &self.basis_degrees
    }

    pub fn basis_degree(&self, pos: usize) -> u64 {
        self.basis_degrees[pos]
    }

    /// l = max basis degree.
    pub fn max_basis_degree(&self) -> u64 {
        self.basis_degrees.iter().max().copied().unwrap_or(0)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn degree_of(&self, u: &ModuleMonomial) -> u64 {
        u.mono.total_degree() + self.basis_degrees[u.pos]
    }

    /// The extended module F^h over S[t], with t appended as the last
    /// variable and the same basis degrees.
    pub fn homogenized(&self, tvar: &str) -> Result<FreeModuleSpec, Error> {
        if self.vars.iter().any(|v| v == tvar) {
            return Err(Error::InvalidInput(format!(
                "homogenization variable {tvar} collides with a ring variable"
            )));
        }
        let mut vars = self.vars.clone();
        vars.push(tvar.to_string());
        Ok(FreeModuleSpec {
            vars,
            basis_names: self.basis_names.clone(),
            basis_degrees: self.basis_degrees.clone(),
            field: self.field,
        })
    }

    /// The same module with every basis degree set to zero. Krull dimension
    /// and initial modules do not depend on the grading shifts, so internal
    /// dimension computations run here.
    pub fn ungraded(&self) -> FreeModuleSpec {
        FreeModuleSpec {
            vars: self.vars.clone(),
            basis_names: self.basis_names.clone(),
            basis_degrees: vec![0; self.rank()],
            field: self.field,
        }
    }
}

/// x^a e_j. Positions are 0-based internally and 1-based in display.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleMonomial {
    pub mono: Monomial,
    pub pos: usize,
}

impl ModuleMonomial {
    pub fn basis(nvars: usize, pos: usize) -> Self {
        ModuleMonomial {
            mono: Monomial::one(nvars),
            pos,
        }
    }

    pub fn mul_mono(&self, m: &Monomial) -> ModuleMonomial {
        ModuleMonomial {
            mono: self.mono.mul(m),
            pos: self.pos,
        }
    }

    /// Divisibility within the module: same position and monomial division.
    pub fn divides(&self, other: &ModuleMonomial) -> bool {
        self.pos == other.pos && self.mono.divides(&other.mono)
    }

    /// Order-independent canonical comparison (position, then exponents),
    /// used only for deterministic tie-breaking.
    pub fn canonical_cmp(&self, other: &ModuleMonomial) -> Ordering {
        self.pos
            .cmp(&other.pos)
            .then_with(|| self.mono.exps().cmp(other.mono.exps()))
    }
}

/// A module element in canonical form: terms sorted strictly descending
/// under the ambient order, no zero coefficients, no duplicate monomials.
/// The zero element has an empty term list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleElement {
    terms: Vec<(Scalar, ModuleMonomial)>,
}

impl ModuleElement {
    pub fn zero() -> Self {
        ModuleElement { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Scalar, ModuleMonomial)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Leading term under the order the element was normalized with.
    pub fn leading(&self) -> Option<(&Scalar, &ModuleMonomial)> {
        self.terms.first().map(|(c, u)| (c, u))
    }

    pub fn leading_monomial(&self) -> Option<&ModuleMonomial> {
        self.terms.first().map(|(_, u)| u)
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.terms.first().map(|(c, _)| c)
    }
}

/// The ambient free module together with a fixed monomial order; the
/// context object all element-level operations go through. Values are
/// immutable after construction and operations are pure functions.
#[derive(Clone, Debug)]
pub struct FreeModule {
    pub spec: FreeModuleSpec,
    pub order: MonomialOrder,
}

impl FreeModule {
    pub fn new(spec: FreeModuleSpec, order: MonomialOrder) -> Self {
        FreeModule { spec, order }
    }

    pub fn cmp_mm(&self, a: &ModuleMonomial, b: &ModuleMonomial) -> Ordering {
        self.order.cmp_mm(&self.spec, a, b)
    }

    /// Canonical form from an arbitrary term list: sort descending, merge
    /// duplicates, drop zeros. Renormalizing a canonical element is the
    /// identity.
    pub fn element_from_terms(&self, mut terms: Vec<(Scalar, ModuleMonomial)>) -> ModuleElement {
        for (_, u) in &terms {
            debug_assert_eq!(u.mono.nvars(), self.spec.nvars(), "ambient mismatch");
            debug_assert!(u.pos < self.spec.rank(), "position out of range");
        }
        terms.sort_by(|(_, a), (_, b)| self.cmp_mm(b, a));
        let mut out: Vec<(Scalar, ModuleMonomial)> = Vec::with_capacity(terms.len());
        for (c, u) in terms {
            match out.last_mut() {
                Some((lc, lu)) if *lu == u => {
                    *lc = lc.add(&c);
                    if lc.is_zero() {
                        out.pop();
                    }
                }
                _ => {
                    if !c.is_zero() {
                        out.push((c, u));
                    }
                }
            }
        }
        ModuleElement { terms: out }
    }

    pub fn monomial_elem(&self, u: ModuleMonomial) -> ModuleElement {
        self.element_from_terms(vec![(self.spec.field().one(), u)])
    }

    pub fn add(&self, f: &ModuleElement, g: &ModuleElement) -> ModuleElement {
        let mut terms = f.terms.clone();
        terms.extend(g.terms.iter().cloned());
        self.element_from_terms(terms)
    }

    pub fn sub(&self, f: &ModuleElement, g: &ModuleElement) -> ModuleElement {
        self.add(f, &self.neg(g))
    }

    pub fn neg(&self, f: &ModuleElement) -> ModuleElement {
        ModuleElement {
            terms: f.terms.iter().map(|(c, u)| (c.neg(), u.clone())).collect(),
        }
    }

    pub fn scalar_mul(&self, c: &Scalar, f: &ModuleElement) -> ModuleElement {
        if c.is_zero() {
            return ModuleElement::zero();
        }
        ModuleElement {
            terms: f
                .terms
                .iter()
                .map(|(a, u)| (a.mul(c), u.clone()))
                .collect(),
        }
    }

    /// Multiply by a ring monomial; shifts every term, canonical form is
    /// preserved because the order is compatible with multiplication.
    pub fn mono_mul(&self, m: &Monomial, f: &ModuleElement) -> ModuleElement {
        ModuleElement {
            terms: f
                .terms
                .iter()
                .map(|(c, u)| (c.clone(), u.mul_mono(m)))
                .collect(),
        }
    }

    /// (c · x^a) · f in one pass.
    pub fn term_mul(&self, c: &Scalar, m: &Monomial, f: &ModuleElement) -> ModuleElement {
        self.mono_mul(m, &self.scalar_mul(c, f))
    }

    /// deg f = max term degree; undefined (None) for the zero element.
    pub fn degree(&self, f: &ModuleElement) -> Option<u64> {
        f.terms.iter().map(|(_, u)| self.spec.degree_of(u)).max()
    }

    pub fn is_homogeneous(&self, f: &ModuleElement) -> bool {
        let mut degs = f.terms.iter().map(|(_, u)| self.spec.degree_of(u));
        match degs.next() {
            None => true,
            Some(d0) => degs.all(|d| d == d0),
        }
    }

    /// Split into homogeneous components, sorted by degree ascending; the
    /// components sum to f.
    pub fn homogeneous_components(&self, f: &ModuleElement) -> Vec<(u64, ModuleElement)> {
        let mut by_deg: Vec<(u64, Vec<(Scalar, ModuleMonomial)>)> = Vec::new();
        for (c, u) in &f.terms {
            let d = self.spec.degree_of(u);
            match by_deg.iter_mut().find(|(dd, _)| *dd == d) {
                Some((_, v)) => v.push((c.clone(), u.clone())),
                None => by_deg.push((d, vec![(c.clone(), u.clone())])),
            }
        }
        by_deg.sort_by_key(|(d, _)| *d);
        by_deg
            .into_iter()
            .map(|(d, terms)| (d, self.element_from_terms(terms)))
            .collect()
    }

    /// Scale so the representative is canonical: monic over GF(p); over the
    /// rationals, integer coprime coefficients with positive leading one.
    pub fn normalize_content(&self, f: &ModuleElement) -> ModuleElement {
        use num_bigint::BigInt;
        use num_integer::Integer;
        use num_traits::{One, Signed, Zero};
        if f.is_zero() {
            return f.clone();
        }
        match self.spec.field() {
            FieldSpec::Prime(_) => {
                let lc = f.leading_coeff().unwrap().clone();
                self.scalar_mul(&lc.inv(), f)
            }
            FieldSpec::Rationals => {
                let mut den_lcm = BigInt::one();
                let mut num_gcd = BigInt::zero();
                for (c, _) in &f.terms {
                    let (n, d) = c.as_rational();
                    den_lcm = den_lcm.lcm(&d);
                    num_gcd = num_gcd.gcd(&n);
                }
                let (ln, _) = f.leading_coeff().unwrap().as_rational();
                let sign = if ln.is_negative() { -BigInt::one() } else { BigInt::one() };
                let factor = self
                    .spec
                    .field()
                    .from_rational(&(den_lcm * sign), &num_gcd)
                    .expect("nonzero gcd");
                self.scalar_mul(&factor, f)
            }
        }
    }

    /// Scale so the leading coefficient is 1.
    pub fn make_monic(&self, f: &ModuleElement) -> ModuleElement {
        match f.leading_coeff() {
            None => f.clone(),
            Some(lc) => self.scalar_mul(&lc.inv(), f),
        }
    }

    pub fn format_element(&self, f: &ModuleElement) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (c, u)) in f.terms.iter().enumerate() {
            let (neg, cs) = {
                let s = c.to_string();
                match s.strip_prefix('-') {
                    Some(rest) => (true, rest.to_string()),
                    None => (false, s),
                }
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = if u.mono.is_one() {
                String::new()
            } else {
                u.mono.format(self.spec.vars())
            };
            let mut parts: Vec<String> = Vec::new();
            if cs != "1" {
                parts.push(cs);
            }
            if !mono.is_empty() {
                parts.push(mono);
            }
            parts.push(self.spec.basis_names()[u.pos].clone());
            out.push_str(&parts.join("*"));
        }
        out
    }
}

impl fmt::Display for FreeModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}[{}] rank {} degrees {:?}",
            self.field,
            self.vars.join(","),
            self.rank(),
            self.basis_degrees
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{PositionStrategy, RingOrder};
    use num_bigint::BigInt;

    fn fm() -> FreeModule {
        let spec = FreeModuleSpec::new(
            vec!["x".into(), "y".into()],
            vec![("e1".into(), 0), ("e2".into(), 1)],
            FieldSpec::Rationals,
        )
        .unwrap();
        let order = MonomialOrder::new(RingOrder::GrevLex, PositionStrategy::Pot, 2);
        FreeModule::new(spec, order)
    }

    fn mm(exps: Vec<u32>, pos: usize) -> ModuleMonomial {
        ModuleMonomial {
            mono: Monomial::from_exps(exps),
            pos,
        }
    }

    #[test]
    fn additive_inverse_gives_zero() {
        let fm = fm();
        let one = fm.spec.field().one();
        let xe1 = fm.element_from_terms(vec![(one.clone(), mm(vec![1, 0], 0))]);
        let sum = fm.add(&xe1, &fm.neg(&xe1));
        assert!(sum.is_zero());
        assert_eq!(fm.degree(&sum), None);
    }

    #[test]
    fn mono_mul_distributes() {
        let fm = fm();
        let one = fm.spec.field().one();
        let f = fm.element_from_terms(vec![
            (one.clone(), mm(vec![0, 0], 0)),
            (one.clone(), mm(vec![0, 1], 0)),
        ]);
        let x = Monomial::var(2, 0);
        let xf = fm.mono_mul(&x, &f);
        let expect = fm.element_from_terms(vec![
            (one.clone(), mm(vec![1, 0], 0)),
            (one.clone(), mm(vec![1, 1], 0)),
        ]);
        assert_eq!(xf, expect);
    }

    #[test]
    fn degree_respects_basis_shift() {
        let fm = fm();
        let one = fm.spec.field().one();
        // x^2 e1 + y e2 with deg e = (0,1): degree 2
        let f = fm.element_from_terms(vec![
            (one.clone(), mm(vec![2, 0], 0)),
            (one.clone(), mm(vec![0, 1], 1)),
        ]);
        assert_eq!(fm.degree(&f), Some(2));
        // e2 alone has degree 1
        let g = fm.element_from_terms(vec![(one.clone(), mm(vec![0, 0], 1))]);
        assert_eq!(fm.degree(&g), Some(1));
    }

    #[test]
    fn homogeneous_components_split_and_sum() {
        let fm = fm();
        let one = fm.spec.field().one();
        let f = fm.element_from_terms(vec![
            (one.clone(), mm(vec![2, 0], 0)),
            (one.clone(), mm(vec![1, 0], 0)),
        ]);
        let comps = fm.homogeneous_components(&f);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].0, 1);
        assert_eq!(comps[1].0, 2);
        let sum = comps
            .iter()
            .fold(ModuleElement::zero(), |acc, (_, c)| fm.add(&acc, c));
        assert_eq!(sum, f);

        // x e1 + e2 is homogeneous of degree 1 under deg e = (0,1)
        let g = fm.element_from_terms(vec![
            (one.clone(), mm(vec![1, 0], 0)),
            (one.clone(), mm(vec![0, 0], 1)),
        ]);
        let comps = fm.homogeneous_components(&g);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].0, 1);
        assert_eq!(comps[0].1, g);
    }

    #[test]
    fn gf5_scalar_mul() {
        let spec = FreeModuleSpec::new(
            vec!["x".into()],
            vec![("e1".into(), 0)],
            FieldSpec::Prime(5),
        )
        .unwrap();
        let fm = FreeModule::new(
            spec,
            MonomialOrder::new(RingOrder::GrevLex, PositionStrategy::Pot, 1),
        );
        let four = fm.spec.field().from_integer(&BigInt::from(4));
        let three = fm.spec.field().from_integer(&BigInt::from(3));
        let f = fm.element_from_terms(vec![(four, mm(vec![0], 0))]);
        let g = fm.scalar_mul(&three, &f);
        let two = fm.spec.field().from_integer(&BigInt::from(2));
        assert_eq!(g.terms()[0].0, two);
    }

    #[test]
    fn content_normalization() {
        let fm = fm();
        let half = fm
            .spec
            .field()
            .from_rational(&BigInt::from(-1), &BigInt::from(2))
            .unwrap();
        let third = fm
            .spec
            .field()
            .from_rational(&BigInt::from(-1), &BigInt::from(3))
            .unwrap();
        let f = fm.element_from_terms(vec![
            (half, mm(vec![1, 0], 0)),
            (third, mm(vec![0, 1], 0)),
        ]);
        let g = fm.normalize_content(&f);
        let (n0, d0) = g.terms()[0].0.as_rational();
        let (n1, d1) = g.terms()[1].0.as_rational();
        assert_eq!((n0, d0), (BigInt::from(3), BigInt::from(1)));
        assert_eq!((n1, d1), (BigInt::from(2), BigInt::from(1)));
    }
}
