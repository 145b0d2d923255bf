//! The universal enveloping algebra with PBW normal ordering.
//!
//! A [`PBWMonomial`] is a product of generators in the fixed basis order
//! (`Z`, `L_-1`, `L_0`, `L_1`, rotations, tower) with positive exponents; by
//! the Poincare-Birkhoff-Witt theorem these monomials form a linear basis of
//! the enveloping algebra. A [`UEAElement`] is a finite rational combination
//! of them.
//!
//! Products are normalized by straightening: scan for an adjacent pair out
//! of order, rewrite `b a = a b + [b, a]`, and repeat. Each step either
//! removes one inversion at constant degree or drops the degree by one, so
//! the rewriting terminates; the result is independent of the scan order
//! because the enveloping algebra relations are confluent.

use crate::algebra::{Algebra, GeneratorId, LieCombo};
use crate::{Error, Rational, Result};
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// A normal-ordered word: strictly increasing generators with exponents.
///
/// The empty word is the unit. Ordering is graded lexicographic: first by
/// total degree, then letter by letter on the expanded word.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PBWMonomial {
    factors: Vec<(GeneratorId, u32)>,
}

impl PBWMonomial {
    pub fn unit() -> Self {
        PBWMonomial { factors: Vec::new() }
    }

    pub fn generator(g: GeneratorId) -> Self {
        PBWMonomial { factors: vec![(g, 1)] }
    }

    /// Run-length encodes a word that is already sorted.
    pub fn from_sorted_word(word: &[GeneratorId]) -> Self {
        debug_assert!(word.windows(2).all(|w| w[0] <= w[1]));
        let mut factors: Vec<(GeneratorId, u32)> = Vec::new();
        for g in word {
            match factors.last_mut() {
                Some((h, e)) if h == g => *e += 1,
                _ => factors.push((*g, 1)),
            }
        }
        PBWMonomial { factors }
    }

    /// Validating constructor for deserialized data: factors must be
    /// strictly increasing with positive exponents.
    pub fn try_new(factors: Vec<(GeneratorId, u32)>) -> Result<Self> {
        if factors.iter().any(|(_, e)| *e == 0) {
            return Err(Error::Parse("monomial exponents must be positive".into()));
        }
        if !factors.windows(2).all(|w| w[0].0 < w[1].0) {
            return Err(Error::Parse(
                "monomial factors must be strictly increasing in basis order".into(),
            ));
        }
        Ok(PBWMonomial { factors })
    }

    pub fn factors(&self) -> &[(GeneratorId, u32)] {
        &self.factors
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    /// Total degree, counting exponents.
    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    /// The expanded word, one entry per letter.
    pub fn word(&self) -> Vec<GeneratorId> {
        let mut w = Vec::with_capacity(self.degree() as usize);
        for (g, e) in &self.factors {
            w.extend(std::iter::repeat(*g).take(*e as usize));
        }
        w
    }

    /// Splits off the power of `g` at the front of the word, if any.
    fn split_leading(&self, g: GeneratorId) -> (u32, PBWMonomial) {
        match self.factors.first() {
            Some((h, e)) if *h == g => (
                *e,
                PBWMonomial { factors: self.factors[1..].to_vec() },
            ),
            _ => (0, self.clone()),
        }
    }

    /// True when every factor is a power of `g`.
    pub fn is_power_of(&self, g: GeneratorId) -> bool {
        self.factors.iter().all(|(h, _)| *h == g)
    }
}

impl Ord for PBWMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| cmp_words(self, other))
    }
}

impl PartialOrd for PBWMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Letter-by-letter comparison of run-length-encoded words.
fn cmp_words(x: &PBWMonomial, y: &PBWMonomial) -> Ordering {
    let (mut i, mut j) = (0usize, 0usize);
    let (mut used_i, mut used_j) = (0u32, 0u32);
    loop {
        match (x.factors.get(i), y.factors.get(j)) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(&(ga, ea)), Some(&(gb, eb))) => match ga.cmp(&gb) {
                Ordering::Equal => {
                    let step = (ea - used_i).min(eb - used_j);
                    used_i += step;
                    used_j += step;
                    if used_i == ea {
                        i += 1;
                        used_i = 0;
                    }
                    if used_j == eb {
                        j += 1;
                        used_j = 0;
                    }
                }
                ord => return ord,
            },
        }
    }
}

impl fmt::Display for PBWMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        for (k, (g, e)) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}

/// An element of the enveloping algebra in PBW normal form.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UEAElement {
    terms: BTreeMap<PBWMonomial, Rational>,
}

impl UEAElement {
    pub fn zero() -> Self {
        UEAElement::default()
    }

    /// The multiplicative unit.
    pub fn unit() -> Self {
        UEAElement::scalar(Rational::one())
    }

    pub fn scalar(c: Rational) -> Self {
        let mut e = UEAElement::zero();
        e.add_term(PBWMonomial::unit(), c);
        e
    }

    /// A single generator as a degree-one element.
    pub fn from_generator(g: GeneratorId) -> Self {
        let mut e = UEAElement::zero();
        e.add_term(PBWMonomial::generator(g), Rational::one());
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Largest monomial degree present, or 0 for the zero element.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(PBWMonomial::degree).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PBWMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &PBWMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `c * m`, removing the entry if the total cancels.
    pub fn add_term(&mut self, m: PBWMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
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

    pub fn add_assign(&mut self, other: &UEAElement) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &UEAElement) -> UEAElement {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &UEAElement) -> UEAElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> UEAElement {
        UEAElement {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scaled(&self, c: &Rational) -> UEAElement {
        if c.is_zero() {
            return UEAElement::zero();
        }
        UEAElement {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }
}

impl fmt::Display for UEAElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let one = Rational::one();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_unit() {
                write!(f, "{mag}")?;
            } else if mag == one {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    monomial: Vec<(String, u32)>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    terms: Vec<TermJson>,
}

impl Serialize for UEAElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| TermJson {
                monomial: m
                    .factors()
                    .iter()
                    .map(|(g, e)| (g.to_string(), *e))
                    .collect(),
                coeff: c.to_string(),
            })
            .collect();
        ElementJson { terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for UEAElement {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = ElementJson::deserialize(de)?;
        let mut out = UEAElement::zero();
        for t in raw.terms {
            let mut factors = Vec::with_capacity(t.monomial.len());
            for (tag, e) in t.monomial {
                let g: GeneratorId = tag.parse().map_err(D::Error::custom)?;
                factors.push((g, e));
            }
            let m = PBWMonomial::try_new(factors).map_err(D::Error::custom)?;
            let c = Rational::from_str(&t.coeff)
                .map_err(|e| D::Error::custom(format!("bad coefficient: {e}")))?;
            out.add_term(m, c);
        }
        Ok(out)
    }
}

fn pow_rational(v: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= v;
    }
    acc
}

#[cfg(debug_assertions)]
fn inversions(word: &[GeneratorId]) -> usize {
    let mut n = 0;
    for i in 0..word.len() {
        for j in i + 1..word.len() {
            if word[i] > word[j] {
                n += 1;
            }
        }
    }
    n
}

impl Algebra {
    /// A generator of this algebra as an enveloping-algebra element.
    pub fn embed(&self, g: GeneratorId) -> Result<UEAElement> {
        self.validate_generator(g)?;
        Ok(UEAElement::from_generator(g))
    }

    /// Checks that every generator in `x` belongs to this algebra.
    pub fn validate_element(&self, x: &UEAElement) -> Result<()> {
        for (m, _) in x.terms() {
            for (g, _) in m.factors() {
                self.validate_generator(*g)?;
            }
        }
        Ok(())
    }

    /// Normal-orders `coeff * word` and accumulates the result into `acc`.
    fn straighten_into(&self, word: Vec<GeneratorId>, coeff: Rational, acc: &mut UEAElement) {
        let mut pending = vec![(coeff, word)];
        while let Some((c, w)) = pending.pop() {
            match w.windows(2).position(|p| p[0] > p[1]) {
                None => acc.add_term(PBWMonomial::from_sorted_word(&w), c),
                Some(k) => {
                    // b a = a b + [b, a]: the swap keeps the degree and
                    // removes one inversion, the bracket terms are shorter.
                    for (g, bc) in self.bracket_ref(w[k], w[k + 1]).iter() {
                        let mut rw = Vec::with_capacity(w.len() - 1);
                        rw.extend_from_slice(&w[..k]);
                        rw.push(*g);
                        rw.extend_from_slice(&w[k + 2..]);
                        pending.push((&c * bc, rw));
                    }
                    #[cfg(debug_assertions)]
                    let before = inversions(&w);
                    let mut sw = w;
                    sw.swap(k, k + 1);
                    #[cfg(debug_assertions)]
                    debug_assert_eq!(inversions(&sw), before - 1);
                    pending.push((c, sw));
                }
            }
        }
    }

    /// PBW-normal-ordered product `x y`.
    pub fn multiply(&self, x: &UEAElement, y: &UEAElement) -> Result<UEAElement> {
        self.validate_element(x)?;
        self.validate_element(y)?;
        let mut acc = UEAElement::zero();
        for (mx, cx) in x.terms() {
            let wx = mx.word();
            for (my, cy) in y.terms() {
                let mut w = Vec::with_capacity(wx.len() + my.degree() as usize);
                w.extend_from_slice(&wx);
                w.extend(my.word());
                self.straighten_into(w, cx * cy, &mut acc);
            }
        }
        Ok(acc)
    }

    /// `x y - y x`, normal ordered.
    pub fn commutator(&self, x: &UEAElement, y: &UEAElement) -> Result<UEAElement> {
        Ok(self.multiply(x, y)?.sub(&self.multiply(y, x)?))
    }

    /// `[x, g]` computed by the derivation rule, term by term: much cheaper
    /// than forming both products when `g` is a single generator.
    pub fn commutator_with_generator(
        &self,
        x: &UEAElement,
        g: GeneratorId,
    ) -> Result<UEAElement> {
        self.validate_generator(g)?;
        self.validate_element(x)?;
        let mut acc = UEAElement::zero();
        for (m, c) in x.terms() {
            let w = m.word();
            for p in 0..w.len() {
                let br: &LieCombo = self.bracket_ref(w[p], g);
                if br.is_empty() {
                    continue;
                }
                for (h, bc) in br.iter() {
                    let mut rw = Vec::with_capacity(w.len());
                    rw.extend_from_slice(&w[..p]);
                    rw.push(*h);
                    rw.extend_from_slice(&w[p + 1..]);
                    self.straighten_into(rw, c * bc, &mut acc);
                }
            }
        }
        Ok(acc)
    }

    /// Specializes the central element to a scalar: every `Z^e` factor
    /// becomes `value^e`. Errors on centerless algebras.
    pub fn set_central_charge(&self, x: &UEAElement, value: &Rational) -> Result<UEAElement> {
        if !self.spec().extended() {
            return Err(Error::Domain(
                "the algebra has no central element to specialize".into(),
            ));
        }
        self.validate_element(x)?;
        let mut out = UEAElement::zero();
        for (m, c) in x.terms() {
            let (zexp, rest) = m.split_leading(GeneratorId::Z);
            if zexp == 0 {
                out.add_term(rest, c.clone());
            } else {
                out.add_term(rest, c * pow_rational(value, zexp));
            }
        }
        Ok(out)
    }
}
