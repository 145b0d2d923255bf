//! The Lie algebra: generator labels, structure constants, Jacobi checking.
//!
//! Generators and their brackets:
//!
//! * `L_n`, `n = -1, 0, 1`: an `sl(2)` triple, `[L_n, L_m] = (m - n) L_{n+m}`.
//! * `M_ij`, `1 <= i < j <= d`: rotations, `[M_ij, M_kl] = d_ik M_jl + d_jl M_ik
//!   - d_il M_jk - d_jk M_il` (with `M_ji = -M_ij`).
//! * `C_i^(a)`, `i = 1..d`, `a = -l, -l+1, ..., l`: a vector tower carrying a
//!   spin-`l` representation of the `sl(2)` triple,
//!   `[L_n, C_i^(a)] = (a - l n) C_i^(a+n)` and
//!   `[M_ij, C_k^(a)] = d_ik C_j^(a) - d_jk C_i^(a)`.
//! * `Z` (extended algebras only): central, with
//!   `[C_i^(a), C_j^(b)] = (-1)^(a+l) (a+l)! (b+l)! eta_ij Z` when `a + b = 0`
//!   and zero otherwise.
//!
//! The pairing `eta` is forced by antisymmetry of the `[C, C]` bracket:
//! symmetric (`eta_ij = d_ij`) for half-integer `l`, and antisymmetric
//! (`eta_ij = eps_ij`, only possible for `d = 2`) for integer `l`. That is
//! why the central extension with integer `l` exists only in the plane.

use crate::halfint::HalfInt;
use crate::{Error, Rational, Result};
use num_traits::{Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

/// The invariant pairing contracted with `Z` in the `[C, C]` bracket.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum EtaKind {
    /// Kronecker delta; the half-integer-`l` pairing, any dimension.
    Symmetric,
    /// Levi-Civita symbol in the plane; the integer-`l` pairing, `d = 2` only.
    Symplectic,
}

/// Which algebra to build: the spin label `l`, the spatial dimension `d`,
/// and whether the central element `Z` is present.
///
/// The pairing kind is derived from `l` and never chosen independently,
/// except through [`AlgebraSpec::with_eta`] which exists to demonstrate that
/// the mismatched pairing violates the Jacobi identity.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct AlgebraSpec {
    l: HalfInt,
    d: u32,
    extended: bool,
    eta: EtaKind,
}

impl AlgebraSpec {
    /// Validates `l >= 1/2`, `d >= 1`, and (for extended algebras with
    /// integer `l`) `d = 2`; derives the pairing from the parity of `l`.
    pub fn new(l: HalfInt, d: u32, extended: bool) -> Result<Self> {
        if l.twice() < 1 {
            return Err(Error::Config(format!("l must be positive, got {l}")));
        }
        if d < 1 {
            return Err(Error::Config("d must be at least 1".into()));
        }
        let eta = if l.is_integer() {
            EtaKind::Symplectic
        } else {
            EtaKind::Symmetric
        };
        if extended && l.is_integer() && d != 2 {
            return Err(Error::Config(format!(
                "the central extension with integer l = {l} exists only for d = 2, got d = {d}"
            )));
        }
        Ok(AlgebraSpec { l, d, extended, eta })
    }

    /// Like [`AlgebraSpec::new`] but with an explicit pairing, bypassing the
    /// parity rule. Used to exhibit Jacobi failures for the wrong pairing.
    pub fn with_eta(l: HalfInt, d: u32, extended: bool, eta: EtaKind) -> Result<Self> {
        if l.twice() < 1 {
            return Err(Error::Config(format!("l must be positive, got {l}")));
        }
        if d < 1 {
            return Err(Error::Config("d must be at least 1".into()));
        }
        if eta == EtaKind::Symplectic && d != 2 {
            return Err(Error::Config(
                "the symplectic pairing is only defined for d = 2".into(),
            ));
        }
        Ok(AlgebraSpec { l, d, extended, eta })
    }

    pub fn l(&self) -> HalfInt {
        self.l
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn extended(&self) -> bool {
        self.extended
    }

    pub fn eta(&self) -> EtaKind {
        self.eta
    }

    /// The same algebra without the central element.
    pub fn centerless(&self) -> AlgebraSpec {
        AlgebraSpec { extended: false, ..*self }
    }

    /// Number of basis generators:
    /// `3 + d(d-1)/2 + d(2l+1)`, plus one for `Z` when extended.
    pub fn dimension(&self) -> usize {
        let d = self.d as usize;
        let tower = self.l.twice() as usize + 1;
        3 + d * (d - 1) / 2 + d * tower + usize::from(self.extended)
    }

    /// `eta_ij` as an integer in `{-1, 0, 1}`; indices are 1-based.
    pub fn eta_value(&self, i: u32, j: u32) -> i32 {
        match self.eta {
            EtaKind::Symmetric => i32::from(i == j),
            EtaKind::Symplectic => match (i, j) {
                (1, 2) => 1,
                (2, 1) => -1,
                _ => 0,
            },
        }
    }

    /// The tower labels `-l, -l+1, ..., l` in increasing order.
    pub fn alpha_range(&self) -> impl Iterator<Item = HalfInt> {
        let t = self.l.twice();
        (-t..=t).step_by(2).map(HalfInt::from_twice)
    }

    /// The rotation index pairs `(i, j)` with `1 <= i < j <= d`, in basis order.
    pub fn rotation_pairs(&self) -> impl Iterator<Item = (u32, u32)> {
        let d = self.d;
        (1..=d).flat_map(move |i| (i + 1..=d).map(move |j| (i, j)))
    }
}

#[derive(Serialize, Deserialize)]
struct SpecJson {
    l: String,
    d: u32,
    extended: bool,
}

impl Serialize for AlgebraSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SpecJson {
            l: self.l.to_string(),
            d: self.d,
            extended: self.extended,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraSpec {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = SpecJson::deserialize(de)?;
        let l: HalfInt = raw.l.parse().map_err(D::Error::custom)?;
        AlgebraSpec::new(l, raw.d, raw.extended).map_err(D::Error::custom)
    }
}

/// A basis generator label.
///
/// The derived ordering is the normal-ordering ("alphabet") order used by
/// the enveloping algebra: `Z`, then `L_-1, L_0, L_1`, then rotations in
/// lexicographic index order, then the tower sorted by `(alpha, i)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum GeneratorId {
    /// The central element.
    Z,
    /// `L_n` for `n` in `{-1, 0, 1}`.
    L(i8),
    /// `M_ij` with `1 <= i < j <= d`.
    M(u32, u32),
    /// `C_i^(alpha)`: the field is `(alpha, i)`.
    C(HalfInt, u32),
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorId::Z => write!(f, "Z"),
            GeneratorId::L(n) => write!(f, "L{n}"),
            GeneratorId::M(i, j) => write!(f, "M:{i}:{j}"),
            GeneratorId::C(a, i) => write!(f, "C:{a}:{i}"),
        }
    }
}

impl FromStr for GeneratorId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown generator tag {s:?}"));
        if s == "Z" {
            return Ok(GeneratorId::Z);
        }
        if let Some(rest) = s.strip_prefix('L') {
            let n: i8 = rest.parse().map_err(|_| bad())?;
            if !(-1..=1).contains(&n) {
                return Err(bad());
            }
            return Ok(GeneratorId::L(n));
        }
        if let Some(rest) = s.strip_prefix("M:") {
            let (i, j) = rest.split_once(':').ok_or_else(bad)?;
            let i: u32 = i.parse().map_err(|_| bad())?;
            let j: u32 = j.parse().map_err(|_| bad())?;
            if i == 0 || i >= j {
                return Err(bad());
            }
            return Ok(GeneratorId::M(i, j));
        }
        if let Some(rest) = s.strip_prefix("C:") {
            let (a, i) = rest.rsplit_once(':').ok_or_else(bad)?;
            let a: HalfInt = a.parse().map_err(|_| bad())?;
            let i: u32 = i.parse().map_err(|_| bad())?;
            if i == 0 {
                return Err(bad());
            }
            return Ok(GeneratorId::C(a, i));
        }
        Err(bad())
    }
}

impl Serialize for GeneratorId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GeneratorId {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// A finite rational linear combination of generators; the value of a bracket.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LieCombo {
    terms: BTreeMap<GeneratorId, Rational>,
}

impl LieCombo {
    pub fn zero() -> Self {
        LieCombo::default()
    }

    pub fn term(g: GeneratorId, c: Rational) -> Self {
        let mut combo = LieCombo::zero();
        combo.add_term(g, c);
        combo
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c * g`, removing the entry if the total cancels.
    pub fn add_term(&mut self, g: GeneratorId, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(g) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &LieCombo) {
        for (g, c) in &other.terms {
            self.add_term(*g, c.clone());
        }
    }

    pub fn scaled(&self, c: &Rational) -> LieCombo {
        if c.is_zero() {
            return LieCombo::zero();
        }
        LieCombo {
            terms: self.terms.iter().map(|(g, x)| (*g, x * c)).collect(),
        }
    }

    pub fn neg(&self) -> LieCombo {
        LieCombo {
            terms: self.terms.iter().map(|(g, x)| (*g, -x)).collect(),
        }
    }

    pub fn coeff(&self, g: GeneratorId) -> Rational {
        self.terms.get(&g).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GeneratorId, &Rational)> {
        self.terms.iter()
    }
}

impl fmt::Display for LieCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (g, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mag == Rational::from_integer(1.into()) {
                write!(f, "{g}")?;
            } else {
                write!(f, "{mag}*{g}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for LieCombo {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<(String, String)> = self
            .terms
            .iter()
            .map(|(g, c)| (g.to_string(), c.to_string()))
            .collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LieCombo {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<(String, String)>::deserialize(de)?;
        let mut combo = LieCombo::zero();
        for (g, c) in pairs {
            let g: GeneratorId = g.parse().map_err(D::Error::custom)?;
            let c = Rational::from_str(&c).map_err(D::Error::custom)?;
            combo.add_term(g, c);
        }
        Ok(combo)
    }
}

/// The ordered basis for a spec: `Z` (if extended), `L_-1, L_0, L_1`,
/// rotations, then the tower. The order agrees with `GeneratorId`'s `Ord`.
pub fn generators(spec: &AlgebraSpec) -> Vec<GeneratorId> {
    let mut basis = Vec::with_capacity(spec.dimension());
    if spec.extended() {
        basis.push(GeneratorId::Z);
    }
    for n in -1..=1 {
        basis.push(GeneratorId::L(n));
    }
    for (i, j) in spec.rotation_pairs() {
        basis.push(GeneratorId::M(i, j));
    }
    for a in spec.alpha_range() {
        for i in 1..=spec.d() {
            basis.push(GeneratorId::C(a, i));
        }
    }
    debug_assert!(basis.windows(2).all(|w| w[0] < w[1]));
    debug_assert_eq!(basis.len(), spec.dimension());
    basis
}

/// One failing Jacobi triple, with the nonzero cyclic residual.
#[derive(Clone, Debug, Serialize)]
pub struct JacobiViolation {
    pub a: GeneratorId,
    pub b: GeneratorId,
    pub c: GeneratorId,
    pub residual: LieCombo,
}

/// Result of the exhaustive Jacobi identity check.
#[derive(Clone, Debug, Serialize)]
pub struct JacobiReport {
    /// Number of unordered triples of distinct generators examined.
    pub checked: usize,
    pub violations: Vec<JacobiViolation>,
}

impl JacobiReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// An algebra instance: the basis and the full precomputed bracket table.
pub struct Algebra {
    spec: AlgebraSpec,
    basis: Vec<GeneratorId>,
    index: HashMap<GeneratorId, usize>,
    table: Vec<LieCombo>,
}

impl Algebra {
    pub fn new(spec: AlgebraSpec) -> Self {
        let basis = generators(&spec);
        let n = basis.len();
        let index: HashMap<_, _> = basis.iter().enumerate().map(|(k, g)| (*g, k)).collect();
        let mut table = vec![LieCombo::zero(); n * n];
        for (p, a) in basis.iter().enumerate() {
            for (q, b) in basis.iter().enumerate() {
                table[p * n + q] = bracket_raw(&spec, *a, *b);
            }
        }
        Algebra { spec, basis, index, table }
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn basis(&self) -> &[GeneratorId] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Index of `g` in the ordered basis.
    pub fn generator_index(&self, g: GeneratorId) -> Result<usize> {
        self.index.get(&g).copied().ok_or_else(|| {
            Error::Domain(format!("generator {g} does not exist in this algebra"))
        })
    }

    pub(crate) fn bracket_ref(&self, a: GeneratorId, b: GeneratorId) -> &LieCombo {
        let p = self.index[&a];
        let q = self.index[&b];
        &self.table[p * self.basis.len() + q]
    }

    /// `[a, b]` as a combination of basis generators.
    pub fn bracket(&self, a: GeneratorId, b: GeneratorId) -> Result<LieCombo> {
        self.generator_index(a)?;
        self.generator_index(b)?;
        Ok(self.bracket_ref(a, b).clone())
    }

    /// `[g, x]` extended linearly in `x`.
    pub fn bracket_gen_combo(&self, g: GeneratorId, x: &LieCombo) -> LieCombo {
        let mut out = LieCombo::zero();
        for (h, c) in x.iter() {
            out.add_assign(&self.bracket_ref(g, *h).scaled(c));
        }
        out
    }

    /// Checks `[a,[b,c]] + [b,[c,a]] + [c,[a,b]] = 0` for every unordered
    /// triple of distinct generators. Triples with a repeated generator
    /// vanish identically by bilinearity and antisymmetry.
    pub fn jacobi_check(&self) -> JacobiReport {
        let n = self.basis.len();
        let mut checked = 0;
        let mut violations = Vec::new();
        for p in 0..n {
            for q in p + 1..n {
                for r in q + 1..n {
                    let (a, b, c) = (self.basis[p], self.basis[q], self.basis[r]);
                    checked += 1;
                    let mut res = self.bracket_gen_combo(a, self.bracket_ref(b, c));
                    res.add_assign(&self.bracket_gen_combo(b, self.bracket_ref(c, a)));
                    res.add_assign(&self.bracket_gen_combo(c, self.bracket_ref(a, b)));
                    if !res.is_zero() {
                        violations.push(JacobiViolation { a, b, c, residual: res });
                    }
                }
            }
        }
        JacobiReport { checked, violations }
    }

    /// Membership check against this algebra's basis.
    pub fn validate_generator(&self, g: GeneratorId) -> Result<()> {
        self.generator_index(g).map(|_| ())
    }
}

/// `M_ij` for arbitrary index order: canonicalizes via `M_ji = -M_ij`,
/// `M_ii = 0`.
fn rotation_combo(i: u32, j: u32, c: Rational) -> LieCombo {
    use std::cmp::Ordering::*;
    match i.cmp(&j) {
        Equal => LieCombo::zero(),
        Less => LieCombo::term(GeneratorId::M(i, j), c),
        Greater => LieCombo::term(GeneratorId::M(j, i), -c),
    }
}

/// Structure constants, computed case by case.
fn bracket_raw(spec: &AlgebraSpec, a: GeneratorId, b: GeneratorId) -> LieCombo {
    use GeneratorId::*;
    let l = spec.l();
    match (a, b) {
        (Z, _) | (_, Z) => LieCombo::zero(),

        (L(n), L(m)) => {
            let c = Rational::from_integer(i64::from(m - n).into());
            if c.is_zero() {
                LieCombo::zero()
            } else {
                LieCombo::term(L(n + m), c)
            }
        }

        // rotations are scalars for the sl(2) triple
        (L(_), M(..)) | (M(..), L(_)) => LieCombo::zero(),

        (L(n), C(alpha, i)) => {
            // coefficient alpha - l*n; the boundary terms that would leave
            // the tower come with a vanishing coefficient, so they never
            // actually escape.
            let c = alpha.to_rational() - l.to_rational() * Rational::from_integer(n.into());
            if c.is_zero() {
                return LieCombo::zero();
            }
            let target = alpha + i32::from(n);
            debug_assert!(target.twice().abs() <= l.twice());
            LieCombo::term(C(target, i), c)
        }
        (C(alpha, i), L(n)) => bracket_raw(spec, L(n), C(alpha, i)).neg(),

        (M(i, j), C(alpha, k)) => {
            let mut out = LieCombo::zero();
            if i == k {
                out.add_term(C(alpha, j), Rational::from_integer(1.into()));
            }
            if j == k {
                out.add_term(C(alpha, i), Rational::from_integer((-1).into()));
            }
            out
        }
        (C(alpha, k), M(i, j)) => bracket_raw(spec, M(i, j), C(alpha, k)).neg(),

        (M(i, j), M(k, m)) => {
            let mut out = LieCombo::zero();
            let one = Rational::from_integer(1.into());
            if i == k {
                out.add_assign(&rotation_combo(j, m, one.clone()));
            }
            if j == m {
                out.add_assign(&rotation_combo(i, k, one.clone()));
            }
            if i == m {
                out.add_assign(&rotation_combo(j, k, -one.clone()));
            }
            if j == k {
                out.add_assign(&rotation_combo(i, m, -one));
            }
            out
        }

        (C(alpha, i), C(beta, j)) => {
            if !spec.extended() || alpha + beta != HalfInt::ZERO {
                return LieCombo::zero();
            }
            let eta = spec.eta_value(i, j);
            if eta == 0 {
                return LieCombo::zero();
            }
            // (-1)^(alpha+l) (alpha+l)! (beta+l)! eta_ij, an exact integer.
            let sign = (alpha + l).neg_one_pow().expect("alpha + l is integral");
            let mag = (alpha + l).factorial().expect("alpha + l >= 0")
                * (beta + l).factorial().expect("beta + l >= 0");
            LieCombo::term(Z, Rational::from_integer(mag * sign * eta))
        }
    }
}
