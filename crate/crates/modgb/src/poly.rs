//! Sparse multivariate polynomials in the coefficient ring S = K[x_1,…,x_n].
//!
//! Ring elements show up as presentation-matrix entries, Fitting-ideal
//! generators, and regular-sequence candidates. Terms are kept sorted
//! descending under grevlex, which is a fixed internal canonical order; the
//! active module order never matters for ring arithmetic.

use std::cmp::Ordering;

use crate::field::Scalar;
use crate::monomial::Monomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    terms: Vec<(Scalar, Monomial)>,
}

fn grevlex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    match a.total_degree().cmp(&b.total_degree()) {
        Ordering::Equal => {
            for i in (0..a.nvars()).rev() {
                if a.exp(i) != b.exp(i) {
                    return b.exp(i).cmp(&a.exp(i));
                }
            }
            Ordering::Equal
        }
        ord => ord,
    }
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn from_terms(mut terms: Vec<(Scalar, Monomial)>) -> Self {
        terms.sort_by(|(_, a), (_, b)| grevlex_cmp(b, a));
        let mut out: Vec<(Scalar, Monomial)> = Vec::with_capacity(terms.len());
        for (c, m) in terms {
            match out.last_mut() {
                Some((lc, lm)) if *lm == m => {
                    *lc = lc.add(&c);
                    if lc.is_zero() {
                        out.pop();
                    }
                }
                _ => {
                    if !c.is_zero() {
                        out.push((c, m));
                    }
                }
            }
        }
        Polynomial { terms: out }
    }

    pub fn constant(c: Scalar, nvars: usize) -> Self {
        Polynomial::from_terms(vec![(c, Monomial::one(nvars))])
    }

    pub fn monomial(c: Scalar, m: Monomial) -> Self {
        Polynomial::from_terms(vec![(c, m)])
    }

    pub fn terms(&self) -> &[(Scalar, Monomial)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<(&Scalar, &Monomial)> {
        self.terms.first().map(|(c, m)| (c, m))
    }

    pub fn degree(&self) -> Option<u64> {
        self.terms.iter().map(|(_, m)| m.total_degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(|(_, m)| m.total_degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Polynomial::from_terms(terms)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(c, m)| (c.neg(), m.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, m) in &self.terms {
            for (b, w) in &other.terms {
                terms.push((a.mul(b), m.mul(w)));
            }
        }
        Polynomial::from_terms(terms)
    }

    pub fn mul_term(&self, c: &Scalar, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(a, w)| (a.mul(c), w.mul(m)))
                .collect(),
        }
    }

    pub fn scalar_mul(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(a, m)| (a.mul(c), m.clone())).collect(),
        }
    }

    /// Exact division; None when the division leaves a remainder. Used by
    /// the fraction-free determinant where exactness is an invariant.
    pub fn div_exact(&self, div: &Polynomial) -> Option<Polynomial> {
        let (dlc, dlm) = div.leading()?;
        let mut rem = self.clone();
        let mut quo: Vec<(Scalar, Monomial)> = Vec::new();
        while let Some((rc, rm)) = rem.leading() {
            let m = dlm.div_into(rm)?;
            let c = rc.div(dlc);
            quo.push((c.clone(), m.clone()));
            rem = rem.sub(&div.mul_term(&c, &m));
        }
        Some(Polynomial::from_terms(quo))
    }

    pub fn format(&self, vars: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (c, m)) in self.terms.iter().enumerate() {
            let s = c.to_string();
            let (neg, cs) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = if m.is_one() { String::new() } else { m.format(vars) };
            match (cs.as_str(), mono.is_empty()) {
                ("1", false) => out.push_str(&mono),
                ("1", true) => out.push('1'),
                (_, true) => out.push_str(&cs),
                (_, false) => {
                    out.push_str(&cs);
                    out.push('*');
                    out.push_str(&mono);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use num_bigint::BigInt;

    fn c(v: i64) -> Scalar {
        FieldSpec::Rationals.from_integer(&BigInt::from(v))
    }

    #[test]
    fn mul_and_sub() {
        // (x + y)(x - y) = x^2 - y^2
        let x = Polynomial::monomial(c(1), Monomial::var(2, 0));
        let y = Polynomial::monomial(c(1), Monomial::var(2, 1));
        let prod = x.add(&y).mul(&x.sub(&y));
        let expect = Polynomial::from_terms(vec![
            (c(1), Monomial::from_exps(vec![2, 0])),
            (c(-1), Monomial::from_exps(vec![0, 2])),
        ]);
        assert_eq!(prod, expect);
    }

    #[test]
    fn exact_division_roundtrip() {
        let x = Polynomial::monomial(c(1), Monomial::var(2, 0));
        let y = Polynomial::monomial(c(1), Monomial::var(2, 1));
        let f = x.add(&y);
        let g = x.sub(&y).mul(&f);
        let q = g.div_exact(&f).unwrap();
        assert_eq!(q, x.sub(&y));
        // x^2 is not divisible by x + y
        let x2 = x.mul(&x);
        assert!(x2.div_exact(&f).is_none());
    }
}
