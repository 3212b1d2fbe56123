//! Monomials of the polynomial ring, as dense exponent vectors.

use std::fmt;

/// x^a as the exponent vector a. The vector length is the ambient variable
/// count; exponents are machine integers with overflow checks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn var_pow(nvars: usize, i: usize, e: u32) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = e;
        Monomial { exps }
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.nvars(), other.nvars());
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a <= b)
    }

    /// other / self, if self divides other.
    pub fn div_into(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial {
                exps: other
                    .exps
                    .iter()
                    .zip(&self.exps)
                    .map(|(&b, &a)| b - a)
                    .collect(),
            })
        } else {
            None
        }
    }

    /// Componentwise max(self_i - other_i, 0); the colon operation on exponents.
    pub fn saturating_div(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.saturating_sub(b))
                .collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.min(b))
                .collect(),
        }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    /// True when every variable occurring in self lies in `vars`.
    pub fn supported_on(&self, vars: &[usize]) -> bool {
        self.support().all(|i| vars.contains(&i))
    }

    /// Drop the last variable (used when dehomogenizing).
    pub fn strip_last(&self) -> Monomial {
        Monomial {
            exps: self.exps[..self.exps.len() - 1].to_vec(),
        }
    }

    /// Append a new variable with the given exponent.
    pub fn extend(&self, e: u32) -> Monomial {
        let mut exps = self.exps.clone();
        exps.push(e);
        Monomial { exps }
    }

    pub fn format(&self, vars: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 1 {
                parts.push(vars[i].clone());
            } else if e > 1 {
                parts.push(format!("{}^{}", vars[i], e));
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars()).map(|i| format!("x{}", i + 1)).collect();
        write!(f, "{}", self.format(&names))
    }
}

/// Enumerate all exponent vectors of length `nvars` with total degree `deg`.
pub fn monomials_of_degree(nvars: usize, deg: u64) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(cur: &mut Vec<u32>, i: usize, rem: u64, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = u32::try_from(rem).expect("degree too large to enumerate");
            out.push(Monomial::from_exps(cur.clone()));
            return;
        }
        for e in 0..=rem {
            cur[i] = u32::try_from(e).expect("degree too large to enumerate");
            rec(cur, i + 1, rem - e, out);
        }
    }
    if nvars == 0 {
        if deg == 0 {
            out.push(Monomial::from_exps(vec![]));
        }
        return out;
    }
    rec(&mut cur, 0, deg, &mut out);
    out
}
