//! Verification: centrality, the dressed-generator relations, and the
//! behavior of the invariants when the central charge is switched off.

use crate::algebra::{Algebra, GeneratorId};
use crate::casimir::{build_catalog, decoupled_rotation, decoupled_sl2};
use crate::uea::UEAElement;
use crate::{Error, Rational, Result};
use num_traits::Zero;
use serde::Serialize;

/// A generator that fails to commute with the element under test, together
/// with the exact nonzero commutator.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub generator: GeneratorId,
    pub residual: UEAElement,
}

/// Outcome of a centrality check: either `central` with no witnesses, or
/// every offending generator with its residual.
#[derive(Clone, Debug, Serialize)]
pub struct CentralityReport {
    pub central: bool,
    pub witnesses: Vec<Witness>,
}

/// Checks `[x, g] = 0` for the given generators, in the given order.
pub fn is_central_over(
    alg: &Algebra,
    x: &UEAElement,
    order: &[GeneratorId],
) -> Result<CentralityReport> {
    let mut witnesses = Vec::new();
    for g in order {
        let residual = alg.commutator_with_generator(x, *g)?;
        if !residual.is_zero() {
            witnesses.push(Witness { generator: *g, residual });
        }
    }
    Ok(CentralityReport { central: witnesses.is_empty(), witnesses })
}

/// Checks that `x` commutes with every generator of the algebra.
pub fn is_central(alg: &Algebra, x: &UEAElement) -> Result<CentralityReport> {
    is_central_over(alg, x, alg.basis())
}

/// One commutation relation that came out wrong.
#[derive(Clone, Debug, Serialize)]
pub struct RelationFailure {
    pub relation: String,
    pub residual: UEAElement,
}

/// Outcome of checking a family of commutation relations exactly.
#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    /// Number of relation instances evaluated.
    pub checked: usize,
    pub failures: Vec<RelationFailure>,
}

impl RelationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, relation: String, residual: UEAElement) {
        self.checked += 1;
        if !residual.is_zero() {
            self.failures.push(RelationFailure { relation, residual });
        }
    }
}

/// Verifies the defining property of the dressed `sl(2)` triple `T_n`:
/// it commutes with the tower and the rotations, transforms under the
/// plain `sl(2)` action, and closes on itself up to one power of `Z`:
///
/// * `[T_n, C_i^(a)] = 0`
/// * `[T_n, M_ij] = 0`
/// * `[T_n, T_m] = Z (m - n) T_{n+m}`
/// * `[L_n, T_m] = (m - n) T_{n+m}`
pub fn check_dressed_sl2(alg: &Algebra) -> Result<RelationReport> {
    let t = [
        decoupled_sl2(alg, -1)?,
        decoupled_sl2(alg, 0)?,
        decoupled_sl2(alg, 1)?,
    ];
    check_dressed_sl2_with(alg, &t)
}

/// Same relations evaluated on a caller-supplied candidate triple
/// `[T_-1, T_0, T_1]`; detects any element breaking the family.
pub fn check_dressed_sl2_with(alg: &Algebra, t: &[UEAElement; 3]) -> Result<RelationReport> {
    let spec = *alg.spec();
    let tn = |n: i8| -> &UEAElement { &t[(n + 1) as usize] };
    let z = alg.embed(GeneratorId::Z)?;

    let mut report = RelationReport { checked: 0, failures: Vec::new() };
    for n in -1..=1i8 {
        for a in spec.alpha_range() {
            for i in 1..=spec.d() {
                let g = GeneratorId::C(a, i);
                let res = alg.commutator_with_generator(tn(n), g)?;
                report.record(format!("[T{n}, {g}]"), res);
            }
        }
        for (i, j) in spec.rotation_pairs() {
            let g = GeneratorId::M(i, j);
            let res = alg.commutator_with_generator(tn(n), g)?;
            report.record(format!("[T{n}, {g}]"), res);
        }
        for m in -1..=1i8 {
            let lhs = alg.commutator(tn(n), tn(m))?;
            let rhs = if n == m {
                UEAElement::zero()
            } else {
                let scale = Rational::from_integer(i64::from(m - n).into());
                alg.multiply(&z, tn(n + m))?.scaled(&scale)
            };
            report.record(format!("[T{n}, T{m}] - Z({m} - {n}) T{}", n + m), lhs.sub(&rhs));

            let lhs = alg.commutator(&alg.embed(GeneratorId::L(n))?, tn(m))?;
            let rhs = if n == m {
                UEAElement::zero()
            } else {
                tn(n + m).scaled(&Rational::from_integer(i64::from(m - n).into()))
            };
            report.record(format!("[L{n}, T{m}] - ({m} - {n}) T{}", n + m), lhs.sub(&rhs));
        }
    }
    Ok(report)
}

/// Verifies the defining property of the dressed rotations `R_ij`:
/// they commute with the tower and the `sl(2)` triple and transform as an
/// antisymmetric tensor under the plain rotations:
///
/// * `[C_i^(a), R_jk] = 0`
/// * `[L_n, R_ij] = 0`
/// * `[M_ij, R_kl] = d_ik R_jl + d_jl R_ik - d_il R_jk - d_jk R_il`
pub fn check_dressed_rotations(alg: &Algebra) -> Result<RelationReport> {
    let pairs: Vec<(u32, u32)> = alg.spec().rotation_pairs().collect();
    let dressed: Vec<UEAElement> = pairs
        .iter()
        .map(|&(i, j)| decoupled_rotation(alg, i, j))
        .collect::<Result<_>>()?;
    check_dressed_rotations_with(alg, &dressed)
}

/// Same relations evaluated on caller-supplied candidates, one element per
/// rotation pair in basis order; the tensor transformation law is checked
/// within the supplied family itself.
pub fn check_dressed_rotations_with(alg: &Algebra, dressed: &[UEAElement]) -> Result<RelationReport> {
    let spec = *alg.spec();
    if spec.d() < 2 {
        return Err(Error::Domain(
            "there are no rotations to dress for d = 1".into(),
        ));
    }
    let pairs: Vec<(u32, u32)> = spec.rotation_pairs().collect();
    if dressed.len() != pairs.len() {
        return Err(Error::Domain(format!(
            "expected {} candidate elements, got {}",
            pairs.len(),
            dressed.len()
        )));
    }
    // (i, j) with arbitrary order resolved against the supplied family
    let signed = |i: u32, j: u32| -> UEAElement {
        use std::cmp::Ordering::*;
        let (p, q, flip) = match i.cmp(&j) {
            Equal => return UEAElement::zero(),
            Less => (i, j, false),
            Greater => (j, i, true),
        };
        let pos = pairs.iter().position(|&x| x == (p, q)).expect("pair in range");
        if flip {
            dressed[pos].neg()
        } else {
            dressed[pos].clone()
        }
    };

    let mut report = RelationReport { checked: 0, failures: Vec::new() };
    for (&(i, j), r) in pairs.iter().zip(dressed) {
        for a in spec.alpha_range() {
            for k in 1..=spec.d() {
                let g = GeneratorId::C(a, k);
                // [C, R] = -[R, C]
                let res = alg.commutator_with_generator(r, g)?.neg();
                report.record(format!("[{g}, R:{i}:{j}]"), res);
            }
        }
        for n in -1..=1i8 {
            let g = GeneratorId::L(n);
            let res = alg.commutator_with_generator(r, g)?.neg();
            report.record(format!("[{g}, R:{i}:{j}]"), res);
        }
        for &(k, l) in &pairs {
            let lhs = alg
                .commutator_with_generator(r, GeneratorId::M(k, l))?
                .neg();
            // delta contractions of [M_kl, R_ij]
            let mut rhs = UEAElement::zero();
            if k == i {
                rhs.add_assign(&signed(l, j));
            }
            if l == j {
                rhs.add_assign(&signed(k, i));
            }
            if k == j {
                rhs.add_assign(&signed(l, i).neg());
            }
            if l == i {
                rhs.add_assign(&signed(k, j).neg());
            }
            report.record(format!("[M:{k}:{l}, R:{i}:{j}]"), lhs.sub(&rhs));
        }
    }
    Ok(report)
}

/// One catalog element after sending the central charge to zero.
#[derive(Clone, Debug, Serialize)]
pub struct ZLimitEntry {
    pub name: String,
    /// The limit collapsed to the zero element.
    pub degenerate: bool,
    /// The limit commutes with the whole centerless algebra (trivially true
    /// when degenerate).
    pub central: bool,
    pub witnesses: Vec<Witness>,
}

/// Report for the central-charge-to-zero contraction of a whole catalog.
#[derive(Clone, Debug, Serialize)]
pub struct ZLimitReport {
    pub entries: Vec<ZLimitEntry>,
}

impl ZLimitReport {
    pub fn ok(&self) -> bool {
        self.entries.iter().all(|e| e.central)
    }

    /// Limits that survive as nonzero elements.
    pub fn survivors(&self) -> usize {
        self.entries.iter().filter(|e| !e.degenerate).count()
    }
}

/// Sends the central charge of every catalog invariant to zero and checks
/// the results are still central in the centerless algebra. Some limits can
/// collapse to zero; they are flagged rather than failed.
pub fn check_z_limit(alg: &Algebra) -> Result<ZLimitReport> {
    let spec = *alg.spec();
    if !spec.extended() {
        return Err(Error::Domain(
            "the central-charge limit starts from the extended algebra".into(),
        ));
    }
    let catalog = build_catalog(alg)?;
    let centerless = Algebra::new(spec.centerless());
    let mut entries = Vec::new();
    for (name, element) in catalog.named() {
        let limit = alg.set_central_charge(element, &Rational::zero())?;
        if limit.is_zero() {
            entries.push(ZLimitEntry {
                name,
                degenerate: true,
                central: true,
                witnesses: Vec::new(),
            });
        } else {
            let c = is_central(&centerless, &limit)?;
            entries.push(ZLimitEntry {
                name,
                degenerate: false,
                central: c.central,
                witnesses: c.witnesses,
            });
        }
    }
    Ok(ZLimitReport { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraSpec;
    use crate::casimir::quartic_casimir;
    use crate::halfint::HalfInt;
    use crate::rational;
    use crate::uea::PBWMonomial;

    fn half(t: i32) -> HalfInt {
        HalfInt::from_twice(t)
    }

    fn alg(lt: i32, d: u32, ext: bool) -> Algebra {
        Algebra::new(AlgebraSpec::new(half(lt), d, ext).unwrap())
    }

    #[test]
    fn central_element_is_central() {
        let a = alg(1, 2, true);
        let z = a.embed(GeneratorId::Z).unwrap();
        let report = is_central(&a, &z).unwrap();
        assert!(report.central);
        assert!(report.witnesses.is_empty());
    }

    #[test]
    fn non_central_element_yields_witnesses() {
        use GeneratorId::*;
        let a = alg(1, 1, true);
        let report = is_central(&a, &a.embed(L(0)).unwrap()).unwrap();
        assert!(!report.central);
        // [L0, L-1] = -L-1 is the first witness in basis order after Z
        let w = &report.witnesses[0];
        assert_eq!(w.generator, L(-1));
        let mut want = UEAElement::zero();
        want.add_term(PBWMonomial::generator(L(-1)), rational(-1, 1));
        assert_eq!(w.residual, want);
    }

    #[test]
    fn centrality_is_order_independent() {
        use GeneratorId::*;
        let a = alg(1, 2, true);
        let x = a.embed(M(1, 2)).unwrap();
        let fwd = is_central(&a, &x).unwrap();
        let mut rev: Vec<GeneratorId> = a.basis().to_vec();
        rev.reverse();
        let bwd = is_central_over(&a, &x, &rev).unwrap();
        assert_eq!(fwd.central, bwd.central);
        let mut f: Vec<_> = fwd.witnesses.iter().map(|w| w.generator).collect();
        let mut b: Vec<_> = bwd.witnesses.iter().map(|w| w.generator).collect();
        f.sort();
        b.sort();
        assert_eq!(f, b);
    }

    #[test]
    fn quartic_is_central_in_small_algebras() {
        for a in [alg(1, 1, true), alg(1, 2, true), alg(2, 2, true)] {
            let q = quartic_casimir(&a).unwrap();
            assert!(is_central(&a, &q).unwrap().central);
        }
    }

    #[test]
    fn dressed_sl2_relations_hold() {
        let a = alg(1, 1, true);
        let report = check_dressed_sl2(&a).unwrap();
        assert!(report.ok(), "failures: {:?}", report.failures);
        // 3n * (2 tower slots) + 0 rotations + 9 self + 9 sl2 action
        assert_eq!(report.checked, 24);
        assert!(check_dressed_sl2(&alg(3, 2, true)).unwrap().ok());
        assert!(check_dressed_sl2(&alg(2, 2, true)).unwrap().ok());
    }

    #[test]
    fn dressed_rotation_relations_hold() {
        assert!(check_dressed_rotations(&alg(1, 2, true)).unwrap().ok());
        assert!(check_dressed_rotations(&alg(1, 3, true)).unwrap().ok());
        assert!(check_dressed_rotations(&alg(2, 2, true)).unwrap().ok());
        assert!(check_dressed_rotations(&alg(1, 1, true)).is_err());
    }

    #[test]
    fn z_limit_flags_the_degenerate_quartic() {
        // at l = 1/2, d = 1 the quartic limit collapses to zero
        let report = check_z_limit(&alg(1, 1, true)).unwrap();
        assert!(report.ok());
        assert_eq!(report.entries.len(), 1);
        assert!(report.entries[0].degenerate);
        assert_eq!(report.survivors(), 0);

        // at l = 1/2, d = 2 both limits survive and stay central
        let report = check_z_limit(&alg(1, 2, true)).unwrap();
        assert!(report.ok());
        assert_eq!(report.survivors(), 2);
        assert!(check_z_limit(&alg(1, 2, false)).is_err());
    }

    #[test]
    fn corrupted_invariant_is_caught() {
        use GeneratorId::*;
        let a = alg(1, 1, true);
        let mut q = quartic_casimir(&a).unwrap();
        // damage one mixed coefficient
        let target = PBWMonomial::from_sorted_word(&[Z, L(0), C(half(-1), 1), C(half(1), 1)]);
        let old = q.coeff(&target);
        assert!(!old.is_zero());
        q.add_term(target, rational(1, 7));
        assert!(!is_central(&a, &q).unwrap().central);
    }
}
