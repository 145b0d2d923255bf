//! Casimir invariants of the extended algebra.
//!
//! The construction proceeds in two steps. First, the `sl(2)` triple and the
//! rotations are dressed with tower bilinears so that they commute with the
//! whole tower: the results ([`decoupled_sl2`], [`decoupled_rotation`])
//! generate a copy of `sl(2) + so(d)` with every bracket multiplied by the
//! central element `Z`. Second, ordinary `sl(2)` and `so(d)` invariants
//! evaluated on the dressed generators become Casimir operators of the full
//! algebra:
//!
//! * the quadratic `sl(2)` invariant of the dressed triple ([`quartic_casimir`],
//!   quartic in the original generators),
//! * traces of even powers of the dressed rotation matrix ([`trace_casimir`]),
//! * and, in even dimension, its Pfaffian ([`pfaffian_casimir`]).
//!
//! [`build_catalog`] assembles the full independent set for a given algebra:
//! quartic plus traces `k = 1 .. (d-1)/2` for odd `d`, quartic plus traces
//! `k = 1 .. d/2 - 1` plus the Pfaffian for even `d`.
//!
//! The dressing trick works because of an exact factorial identity relating
//! the tower action coefficients ([`identity_check`]); it holds for every
//! spin and every tower slot, and the test suite pins it well beyond the
//! dimensions exercised elsewhere.

use crate::algebra::{Algebra, AlgebraSpec, GeneratorId};
use crate::halfint::HalfInt;
use crate::uea::UEAElement;
use crate::{Error, Rational, Result};
use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

fn require_extended(spec: &AlgebraSpec, what: &str) -> Result<()> {
    if !spec.extended() {
        return Err(Error::Domain(format!(
            "{what} requires the central element; the algebra is centerless"
        )));
    }
    Ok(())
}

/// Per-slot weight of the tower bilinear: `(-1)^(l-a) / ((l+a)! (l-a)!)`.
fn slot_weight(l: HalfInt, a: HalfInt) -> Rational {
    let sign = (l - a).neg_one_pow().expect("l - a is integral");
    let den = (l + a).factorial().expect("l + a >= 0") * (l - a).factorial().expect("l - a >= 0");
    Rational::new(sign.into(), den)
}

/// The dressed `sl(2)` generator for `n` in `{-1, 0, 1}`:
/// `Z L_n - (1/2) sum_a (-1)^(l-a) (a - l n) / ((l+a)! (l-a)!)
///  sum_{i,j} eta_ij C_i^(-a) C_j^(a+n)`.
///
/// Slots whose raised index `a + n` would leave the tower are skipped; their
/// weight `(a - l n)` vanishes identically there, so nothing is lost (see
/// [`identity_check`] for the underlying cancellation).
pub fn decoupled_sl2(alg: &Algebra, n: i8) -> Result<UEAElement> {
    let spec = *alg.spec();
    require_extended(&spec, "the dressed sl(2) triple")?;
    if !(-1..=1).contains(&n) {
        return Err(Error::Domain(format!("n must be -1, 0, or 1, got {n}")));
    }
    let l = spec.l();
    let nr = Rational::from_integer(n.into());

    let mut out = alg.multiply(
        &alg.embed(GeneratorId::Z)?,
        &alg.embed(GeneratorId::L(n))?,
    )?;
    let minus_half = crate::rational(-1, 2);
    for a in spec.alpha_range() {
        let strength = a.to_rational() - l.to_rational() * &nr;
        let raised = a + i32::from(n);
        if raised.twice().abs() > l.twice() {
            debug_assert!(strength.is_zero());
            continue;
        }
        if strength.is_zero() {
            continue;
        }
        let w = slot_weight(l, a) * strength * &minus_half;
        for i in 1..=spec.d() {
            for j in 1..=spec.d() {
                let eta = spec.eta_value(i, j);
                if eta == 0 {
                    continue;
                }
                let pair = alg.multiply(
                    &alg.embed(GeneratorId::C(-a, i))?,
                    &alg.embed(GeneratorId::C(raised, j))?,
                )?;
                out.add_assign(&pair.scaled(&(&w * Rational::from_integer(eta.into()))));
            }
        }
    }
    Ok(out)
}

/// The dressed rotation `Z M_ij - (1/2) sum_a (-1)^(l-a) / ((l+a)! (l-a)!)
/// sum_k (eta_jk C_i^(-a) C_k^(a) - eta_ik C_j^(-a) C_k^(a))`.
pub fn decoupled_rotation(alg: &Algebra, i: u32, j: u32) -> Result<UEAElement> {
    let spec = *alg.spec();
    require_extended(&spec, "the dressed rotations")?;
    if !(1 <= i && i < j && j <= spec.d()) {
        return Err(Error::Domain(format!(
            "rotation indices must satisfy 1 <= i < j <= d, got ({i}, {j})"
        )));
    }
    let l = spec.l();

    let mut out = alg.multiply(
        &alg.embed(GeneratorId::Z)?,
        &alg.embed(GeneratorId::M(i, j))?,
    )?;
    let minus_half = crate::rational(-1, 2);
    for a in spec.alpha_range() {
        let w = slot_weight(l, a) * &minus_half;
        for k in 1..=spec.d() {
            for (lead, eta) in [(i, spec.eta_value(j, k)), (j, -spec.eta_value(i, k))] {
                if eta == 0 {
                    continue;
                }
                let pair = alg.multiply(
                    &alg.embed(GeneratorId::C(-a, lead))?,
                    &alg.embed(GeneratorId::C(a, k))?,
                )?;
                out.add_assign(&pair.scaled(&(&w * Rational::from_integer(eta.into()))));
            }
        }
    }
    Ok(out)
}

/// The quadratic `sl(2)` invariant `(1/2)(a b + b a) - h^2` of a triple
/// `(a, h, b)` playing the roles of lowering, Cartan, and raising elements.
pub fn sl2_invariant(
    alg: &Algebra,
    lower: &UEAElement,
    cartan: &UEAElement,
    raise: &UEAElement,
) -> Result<UEAElement> {
    let half = crate::rational(1, 2);
    let sym = alg
        .multiply(lower, raise)?
        .add(&alg.multiply(raise, lower)?)
        .scaled(&half);
    Ok(sym.sub(&alg.multiply(cartan, cartan)?))
}

/// The quadratic `sl(2)` invariant of the dressed triple,
/// `(1/2)(T_-1 T_1 + T_1 T_-1) - T_0^2`: quartic in the original generators
/// and central in the whole extended algebra.
pub fn quartic_casimir(alg: &Algebra) -> Result<UEAElement> {
    let tm = decoupled_sl2(alg, -1)?;
    let t0 = decoupled_sl2(alg, 0)?;
    let tp = decoupled_sl2(alg, 1)?;
    sl2_invariant(alg, &tm, &t0, &tp)
}

/// The dressed rotation matrix as a dense antisymmetric `d x d` array,
/// indexed from zero.
fn rotation_matrix(alg: &Algebra) -> Result<Vec<Vec<UEAElement>>> {
    let d = alg.spec().d() as usize;
    let mut rows = vec![vec![UEAElement::zero(); d]; d];
    for i in 0..d {
        for j in i + 1..d {
            let e = decoupled_rotation(alg, (i + 1) as u32, (j + 1) as u32)?;
            rows[i][j] = e.clone();
            rows[j][i] = e.neg();
        }
    }
    Ok(rows)
}

fn matrix_product(
    alg: &Algebra,
    a: &[Vec<UEAElement>],
    b: &[Vec<UEAElement>],
) -> Result<Vec<Vec<UEAElement>>> {
    let d = a.len();
    let mut out = vec![vec![UEAElement::zero(); d]; d];
    for i in 0..d {
        for j in 0..d {
            let mut acc = UEAElement::zero();
            for t in 0..d {
                acc.add_assign(&alg.multiply(&a[i][t], &b[t][j])?);
            }
            out[i][j] = acc;
        }
    }
    Ok(out)
}

/// `trace(R^(2k))` for the dressed rotation matrix `R`, contracted left to
/// right: `sum R_{i_1 i_2} R_{i_2 i_3} ... R_{i_2k i_1}`. Central for every
/// `k >= 1`; the independent ones are collected by [`build_catalog`].
pub fn trace_casimir(alg: &Algebra, k: u32) -> Result<UEAElement> {
    let spec = alg.spec();
    require_extended(spec, "the trace invariants")?;
    if spec.d() < 2 {
        return Err(Error::Domain(
            "trace invariants need rotations, so d >= 2".into(),
        ));
    }
    if k < 1 {
        return Err(Error::Domain("the trace power k must be at least 1".into()));
    }
    let r = rotation_matrix(alg)?;
    // R^k, then trace(R^2k) = sum_ij (R^k)_ij (R^k)_ji
    let mut p = r.clone();
    for _ in 1..k {
        p = matrix_product(alg, &p, &r)?;
    }
    let d = p.len();
    let mut out = UEAElement::zero();
    for i in 0..d {
        for j in 0..d {
            out.add_assign(&alg.multiply(&p[i][j], &p[j][i])?);
        }
    }
    Ok(out)
}

/// All permutations of `0..n` with their signs.
fn signed_permutations(n: usize) -> Vec<(Vec<usize>, i32)> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(
        n: usize,
        cur: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<(Vec<usize>, i32)>,
    ) {
        if cur.len() == n {
            let mut inv = 0;
            for a in 0..n {
                for b in a + 1..n {
                    if cur[a] > cur[b] {
                        inv += 1;
                    }
                }
            }
            out.push((cur.clone(), if inv % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

/// The Pfaffian of the dressed rotation matrix (even `d` only):
/// `(1 / (2^(d/2) (d/2)!)) sum_perm sign(perm) R_{p1 p2} ... R_{p(d-1) pd}`,
/// factors multiplied left to right. Normalized so that for `d = 2` it is
/// exactly the single dressed rotation.
pub fn pfaffian_casimir(alg: &Algebra) -> Result<UEAElement> {
    let spec = alg.spec();
    require_extended(spec, "the Pfaffian invariant")?;
    let d = spec.d() as usize;
    if d % 2 != 0 {
        return Err(Error::Domain(format!(
            "the Pfaffian is defined only for even d, got d = {d}"
        )));
    }
    let r = rotation_matrix(alg)?;
    let mut sum = UEAElement::zero();
    for (perm, sign) in signed_permutations(d) {
        let mut prod = UEAElement::scalar(Rational::from_integer(sign.into()));
        for pair in perm.chunks_exact(2) {
            prod = alg.multiply(&prod, &r[pair[0]][pair[1]])?;
            if prod.is_zero() {
                break;
            }
        }
        sum.add_assign(&prod);
    }
    let half_d = (d / 2) as u32;
    let mut norm = Rational::from_integer(1.into());
    for t in 1..=half_d {
        norm *= Rational::from_integer((2 * t as i64).into());
    }
    Ok(sum.scaled(&norm.recip()))
}

/// Exact residual of the factorial identity behind the decoupling:
/// `(a - l n) - (-1)^n (a + n(l+1)) (l+a)! (l-a)! / ((l+n+a)! (l-n-a)!)`.
///
/// Defined whenever `a` and `a + n` both lie in `[-l, l]`; returns zero for
/// every such triple. The excluded corners (`a = l, n = 1` and
/// `a = -l, n = -1`) are a domain error.
pub fn identity_check(l: HalfInt, alpha: HalfInt, n: i8) -> Result<Rational> {
    if l.twice() < 1 {
        return Err(Error::Domain(format!("l must be positive, got {l}")));
    }
    if !(-1..=1).contains(&n) {
        return Err(Error::Domain(format!("n must be -1, 0, or 1, got {n}")));
    }
    if alpha.twice().abs() > l.twice() || !(alpha + l).is_integer() {
        return Err(Error::Domain(format!(
            "alpha must lie in the tower of l = {l}, got {alpha}"
        )));
    }
    let raised = alpha + i32::from(n);
    if raised.twice().abs() > l.twice() {
        return Err(Error::Domain(format!(
            "alpha + n leaves the tower: l = {l}, alpha = {alpha}, n = {n}"
        )));
    }
    let sign = if n == 0 { 1 } else { -1 };
    let num = (l + alpha).factorial()? * (l - alpha).factorial()?;
    let den = (l + raised).factorial()? * (l - raised).factorial()?;
    let shifted = alpha.to_rational()
        + Rational::from_integer(n.into()) * (l.to_rational() + Rational::from_integer(1.into()));
    let lhs = alpha.to_rational() - l.to_rational() * Rational::from_integer(n.into());
    Ok(lhs - Rational::from_integer(sign.into()) * shifted * Rational::new(num, den))
}

/// The complete independent set of Casimir invariants for one algebra.
pub struct CasimirCatalog {
    spec: AlgebraSpec,
    quartic: UEAElement,
    /// `(k, trace(R^(2k)))` pairs in increasing `k`.
    traces: Vec<(u32, UEAElement)>,
    pfaffian: Option<UEAElement>,
}

impl CasimirCatalog {
    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn quartic(&self) -> &UEAElement {
        &self.quartic
    }

    pub fn traces(&self) -> &[(u32, UEAElement)] {
        &self.traces
    }

    pub fn pfaffian(&self) -> Option<&UEAElement> {
        self.pfaffian.as_ref()
    }

    pub fn len(&self) -> usize {
        1 + self.traces.len() + usize::from(self.pfaffian.is_some())
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Elements in catalog order with stable names: `quartic`, `trace1`,
    /// `trace2`, ..., `pfaffian`.
    pub fn named(&self) -> Vec<(String, &UEAElement)> {
        let mut out = vec![("quartic".to_string(), &self.quartic)];
        for (k, e) in &self.traces {
            out.push((format!("trace{k}"), e));
        }
        if let Some(p) = &self.pfaffian {
            out.push(("pfaffian".to_string(), p));
        }
        out
    }
}

impl Serialize for CasimirCatalog {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct NamedJson<'a> {
            name: String,
            element: &'a UEAElement,
        }
        let elements: Vec<NamedJson> = self
            .named()
            .into_iter()
            .map(|(name, element)| NamedJson { name, element })
            .collect();
        let mut st = s.serialize_struct("CasimirCatalog", 2)?;
        st.serialize_field("spec", &self.spec)?;
        st.serialize_field("elements", &elements)?;
        st.end()
    }
}

/// Builds every independent invariant for the spec: the quartic, the trace
/// invariants `k = 1 ..= (d-1)/2` (odd `d`) or `k = 1 ..= d/2 - 1` (even
/// `d`), and the Pfaffian when `d` is even.
pub fn build_catalog(alg: &Algebra) -> Result<CasimirCatalog> {
    let spec = *alg.spec();
    require_extended(&spec, "the Casimir catalog")?;
    let d = spec.d();
    let quartic = quartic_casimir(alg)?;
    let max_k = if d % 2 == 1 { (d - 1) / 2 } else { d / 2 - 1 };
    let mut traces = Vec::new();
    for k in 1..=max_k {
        traces.push((k, trace_casimir(alg, k)?));
    }
    let pfaffian = if d % 2 == 0 {
        Some(pfaffian_casimir(alg)?)
    } else {
        None
    };
    Ok(CasimirCatalog { spec, quartic, traces, pfaffian })
}

/// [`decoupled_rotation`] extended to arbitrary index order by antisymmetry:
/// zero on the diagonal, negated below it.
pub fn decoupled_rotation_signed(alg: &Algebra, i: u32, j: u32) -> Result<UEAElement> {
    use std::cmp::Ordering::*;
    match i.cmp(&j) {
        Equal => Ok(UEAElement::zero()),
        Less => decoupled_rotation(alg, i, j),
        Greater => Ok(decoupled_rotation(alg, j, i)?.neg()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational;
    use crate::uea::PBWMonomial;

    fn half(t: i32) -> HalfInt {
        HalfInt::from_twice(t)
    }

    fn alg(lt: i32, d: u32, ext: bool) -> Algebra {
        Algebra::new(AlgebraSpec::new(half(lt), d, ext).unwrap())
    }

    fn elem(pairs: &[(i64, i64, &[GeneratorId])]) -> UEAElement {
        let mut e = UEAElement::zero();
        for (num, den, word) in pairs {
            e.add_term(PBWMonomial::from_sorted_word(word), rational(*num, *den));
        }
        e
    }

    #[test]
    fn dressed_sl2_smallest_case() {
        use GeneratorId::*;
        let a = alg(1, 1, true);
        let cm = C(half(-1), 1);
        let cp = C(half(1), 1);
        assert_eq!(
            decoupled_sl2(&a, -1).unwrap(),
            elem(&[(1, 1, &[Z, L(-1)]), (-1, 2, &[cm, cm])])
        );
        // the 1/4 Z comes from normal ordering the crossed slot
        assert_eq!(
            decoupled_sl2(&a, 0).unwrap(),
            elem(&[(1, 4, &[Z]), (1, 1, &[Z, L(0)]), (-1, 2, &[cm, cp])])
        );
        assert_eq!(
            decoupled_sl2(&a, 1).unwrap(),
            elem(&[(1, 1, &[Z, L(1)]), (-1, 2, &[cp, cp])])
        );
        assert!(decoupled_sl2(&a, 2).is_err());
        assert!(decoupled_sl2(&alg(1, 1, false), 0).is_err());
    }

    #[test]
    fn quartic_smallest_case_frozen() {
        use GeneratorId::*;
        let a = alg(1, 1, true);
        let cm = C(half(-1), 1);
        let cp = C(half(1), 1);
        // every monomial carries Z and the pure tower quartics cancel
        let want = elem(&[
            (3, 16, &[Z, Z]),
            (-3, 2, &[Z, Z, L(0)]),
            (1, 1, &[Z, Z, L(-1), L(1)]),
            (-1, 1, &[Z, Z, L(0), L(0)]),
            (-1, 2, &[Z, L(-1), cp, cp]),
            (1, 1, &[Z, L(0), cm, cp]),
            (-1, 2, &[Z, L(1), cm, cm]),
        ]);
        assert_eq!(quartic_casimir(&a).unwrap(), want);
    }

    #[test]
    fn dressed_rotation_plane_half_integer() {
        use GeneratorId::*;
        let a = alg(1, 2, true);
        // l = 1/2, d = 2: weights are -+1, slot pairs contract with delta
        let got = decoupled_rotation(&a, 1, 2).unwrap();
        let want = elem(&[
            (1, 1, &[Z, M(1, 2)]),
            (-1, 1, &[C(half(-1), 1), C(half(1), 2)]),
            (1, 1, &[C(half(-1), 2), C(half(1), 1)]),
        ]);
        assert_eq!(got, want);
        assert!(decoupled_rotation(&a, 2, 1).is_err());
        assert!(decoupled_rotation(&a, 1, 3).is_err());
        assert!(decoupled_rotation(&alg(1, 1, true), 1, 2).is_err());
    }

    #[test]
    fn plane_pfaffian_is_the_dressed_rotation() {
        let a = alg(2, 2, true);
        assert_eq!(
            pfaffian_casimir(&a).unwrap(),
            decoupled_rotation(&a, 1, 2).unwrap()
        );
        assert!(pfaffian_casimir(&alg(1, 3, true)).is_err());
    }

    #[test]
    fn plane_trace_is_minus_twice_the_squared_pfaffian() {
        let a = alg(1, 2, true);
        let m12 = decoupled_rotation(&a, 1, 2).unwrap();
        let sq = a.multiply(&m12, &m12).unwrap();
        assert_eq!(trace_casimir(&a, 1).unwrap(), sq.scaled(&rational(-2, 1)));
        assert!(trace_casimir(&a, 0).is_err());
        assert!(trace_casimir(&alg(1, 1, true), 1).is_err());
    }

    #[test]
    fn catalog_sizes_follow_the_dimension_rule() {
        for (d, want) in [(1u32, 1usize), (2, 2), (3, 2), (4, 3), (5, 3)] {
            let a = alg(1, d, true);
            let cat = build_catalog(&a).unwrap();
            assert_eq!(cat.len(), want, "catalog size at d = {d}");
            let names: Vec<String> = cat.named().into_iter().map(|(n, _)| n).collect();
            match d {
                1 => assert_eq!(names, ["quartic"]),
                2 => assert_eq!(names, ["quartic", "pfaffian"]),
                3 => assert_eq!(names, ["quartic", "trace1"]),
                4 => assert_eq!(names, ["quartic", "trace1", "pfaffian"]),
                5 => assert_eq!(names, ["quartic", "trace1", "trace2"]),
                _ => unreachable!(),
            }
        }
        assert!(build_catalog(&alg(1, 1, false)).is_err());
    }

    #[test]
    fn identity_residual_vanishes_everywhere() {
        // spins beyond the computation grid included
        for lt in 1..=7 {
            let l = half(lt);
            for at in (-lt..=lt).step_by(2) {
                let a = half(at);
                for n in [-1i8, 0, 1] {
                    let raised = a + i32::from(n);
                    if raised.twice().abs() > lt {
                        assert!(identity_check(l, a, n).is_err());
                        continue;
                    }
                    let r = identity_check(l, a, n).unwrap();
                    assert!(r.is_zero(), "residual {r} at l={l}, alpha={a}, n={n}");
                }
            }
        }
        assert!(identity_check(half(3), half(5), 0).is_err());
        assert!(identity_check(half(3), half(0), 0).is_err());
        assert!(identity_check(half(0), half(0), 0).is_err());
    }

    #[test]
    fn dressed_rotations_close_on_z_times_rotations() {
        use GeneratorId::*;
        // [R_ij, R_kl] = Z (d_ik R_jl + d_jl R_ik - d_il R_jk - d_jk R_il)
        for a in [alg(1, 2, true), alg(1, 3, true), alg(2, 2, true)] {
            let z = a.embed(Z).unwrap();
            let pairs: Vec<(u32, u32)> = a.spec().rotation_pairs().collect();
            for &(i, j) in &pairs {
                for &(k, l) in &pairs {
                    let lhs = a
                        .commutator(
                            &decoupled_rotation(&a, i, j).unwrap(),
                            &decoupled_rotation(&a, k, l).unwrap(),
                        )
                        .unwrap();
                    let mut rhs = UEAElement::zero();
                    if i == k {
                        rhs.add_assign(&decoupled_rotation_signed(&a, j, l).unwrap());
                    }
                    if j == l {
                        rhs.add_assign(&decoupled_rotation_signed(&a, i, k).unwrap());
                    }
                    if i == l {
                        rhs.add_assign(&decoupled_rotation_signed(&a, j, k).unwrap().neg());
                    }
                    if j == k {
                        rhs.add_assign(&decoupled_rotation_signed(&a, i, l).unwrap().neg());
                    }
                    let rhs = a.multiply(&z, &rhs).unwrap();
                    assert_eq!(lhs, rhs, "[R_{i}{j}, R_{k}{l}] mismatch");
                }
            }
        }
    }
}
