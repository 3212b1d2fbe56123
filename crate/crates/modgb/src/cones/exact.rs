//! Refining a q-standard cone decomposition into a q-exact one.

use super::{fan, is_q_standard, ConeDecomposition};
use crate::error::Error;
use crate::module::FreeModuleSpec;

/// Whenever two positive-dimensional cones share a degree, fan the one of
/// minimal dimension (ties broken by the canonically least pivot) and keep
/// going. The degree loop upper bound deg(P+) is re-evaluated every
/// iteration because fanning raises it; termination holds because each fan
/// strictly raises the degree of the replaced cone's positive part.
pub fn exact(spec: &FreeModuleSpec, q_dec: &ConeDecomposition) -> Result<ConeDecomposition, Error> {
    if !is_q_standard(spec, q_dec, q_dec.q) {
        return Err(Error::InvalidInput(
            "EXACT requires a q-standard cone decomposition".into(),
        ));
    }
    let mut cones = q_dec.cones.clone();
    let q = q_dec.q;
    let mut d = q;
    while let Some(degp) = cones
        .iter()
        .filter(|c| c.dim() > 0)
        .map(|c| c.degree(spec))
        .max()
    {
        if d > degp {
            break;
        }
        loop {
            let at_d: Vec<usize> = cones
                .iter()
                .enumerate()
                .filter(|(_, c)| c.dim() > 0 && c.degree(spec) == d)
                .map(|(i, _)| i)
                .collect();
            if at_d.len() <= 1 {
                break;
            }
            let &idx = at_d
                .iter()
                .min_by(|&&a, &&b| {
                    cones[a]
                        .dim()
                        .cmp(&cones[b].dim())
                        .then_with(|| cones[a].pivot.canonical_cmp(&cones[b].pivot))
                })
                .unwrap();
            let victim = cones.remove(idx);
            cones.extend(fan(&victim));
        }
        d += 1;
    }
    Ok(ConeDecomposition::new(cones, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::{is_q_exact, Cone};
    use crate::field::FieldSpec;
    use crate::module::ModuleMonomial;
    use crate::monomial::Monomial;

    fn mm(exps: Vec<u32>, pos: usize) -> ModuleMonomial {
        ModuleMonomial {
            mono: Monomial::from_exps(exps),
            pos,
        }
    }

    #[test]
    fn exact_noop_when_already_exact() {
        let spec = crate::module::FreeModuleSpec::new(
            vec!["x".into(), "y".into()],
            vec![("e1".into(), 0)],
            FieldSpec::Rationals,
        )
        .unwrap();
        let p = ConeDecomposition::new(vec![Cone::new(mm(vec![0, 0], 0), vec![0, 1])], 0);
        let out = exact(&spec, &p).unwrap();
        assert_eq!(out.cones, p.cones);

        // no positive part: unchanged
        let pts = ConeDecomposition::new(vec![Cone::new(mm(vec![1, 0], 0), vec![])], 0);
        let out = exact(&spec, &pts).unwrap();
        assert_eq!(out.cones, pts.cones);
    }

    #[test]
    fn exact_fans_degree_collision() {
        // two rank positions, both contributing a dim-1 cone at degree 0
        let spec = crate::module::FreeModuleSpec::new(
            vec!["x".into(), "y".into()],
            vec![("e1".into(), 0), ("e2".into(), 0)],
            FieldSpec::Rationals,
        )
        .unwrap();
        let q = ConeDecomposition::new(
            vec![
                Cone::new(mm(vec![0, 0], 0), vec![0]),
                Cone::new(mm(vec![0, 0], 1), vec![1]),
            ],
            0,
        );
        let p = exact(&spec, &q).unwrap();
        assert!(is_q_exact(&spec, &p, 0));
        // the e1 cone (least pivot) was fanned
        assert!(p.cones.contains(&Cone::new(mm(vec![0, 0], 0), vec![])));
        assert!(p.cones.contains(&Cone::new(mm(vec![1, 0], 0), vec![0])));
        assert!(p.cones.contains(&Cone::new(mm(vec![0, 0], 1), vec![1])));
        assert_eq!(p.len(), 3);
    }

    #[test]
    fn exact_rejects_non_standard_input() {
        let spec = crate::module::FreeModuleSpec::new(
            vec!["x".into(), "y".into()],
            vec![("e1".into(), 0)],
            FieldSpec::Rationals,
        )
        .unwrap();
        let bad = ConeDecomposition::new(vec![Cone::new(mm(vec![2, 0], 0), vec![0])], 0);
        assert!(exact(&spec, &bad).is_err());
    }
}
