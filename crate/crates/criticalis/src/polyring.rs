//! Exact sparse multivariate polynomial arithmetic over Z and Z/p.
//!
//! Variables are indexed by `(vertex, copy)` pairs so that the variable
//! `x_{v^i}` attached to the i-th duplicate of a vertex has a stable,
//! deterministic position in every monomial order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Identifier of a variable `x_{v^c}`: `vertex` is the 1-based base vertex
/// name, `copy` the duplication index (`copy == 0` is the original vertex).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VarId {
    pub vertex: u32,
    pub copy: u32,
}

impl VarId {
    pub fn new(vertex: u32, copy: u32) -> Self {
        VarId { vertex, copy }
    }

    pub fn base(vertex: u32) -> Self {
        VarId { vertex, copy: 0 }
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.copy == 0 {
            write!(f, "x{}", self.vertex)
        } else {
            write!(f, "x{}_{}", self.vertex, self.copy)
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("coefficient ring mismatch: {0} vs {1}")]
    RingMismatch(CoefficientRing, CoefficientRing),
    #[error("variable {0} is not assigned a value")]
    UnassignedVariable(VarId),
    #[error("parse error: {0}")]
    Parse(String),
}

/// The coefficient ring `P`: the integers or a prime field Z/p.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum CoefficientRing {
    Int,
    Mod(u32),
}

impl CoefficientRing {
    pub fn modulus(&self) -> Option<u32> {
        match self {
            CoefficientRing::Int => None,
            CoefficientRing::Mod(p) => Some(*p),
        }
    }

    /// Canonical representative of `c` in this ring (`0..p` for Z/p).
    pub fn normalize(&self, c: BigInt) -> BigInt {
        match self {
            CoefficientRing::Int => c,
            CoefficientRing::Mod(p) => c.mod_floor(&BigInt::from(*p)),
        }
    }

    pub fn is_unit(&self, c: &BigInt) -> bool {
        match self {
            CoefficientRing::Int => c.abs().is_one(),
            CoefficientRing::Mod(p) => !c.mod_floor(&BigInt::from(*p)).is_zero(),
        }
    }

    pub fn invert(&self, c: &BigInt) -> Option<BigInt> {
        match self {
            CoefficientRing::Int => {
                if c.abs().is_one() {
                    Some(c.clone())
                } else {
                    None
                }
            }
            CoefficientRing::Mod(p) => {
                let p = BigInt::from(*p);
                let c = c.mod_floor(&p);
                if c.is_zero() {
                    return None;
                }
                let e = c.extended_gcd(&p);
                if e.gcd.is_one() {
                    Some(e.x.mod_floor(&p))
                } else {
                    None
                }
            }
        }
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Int => write!(f, "Z"),
            CoefficientRing::Mod(p) => write!(f, "Z/{}", p),
        }
    }
}

/// A power product of variables. Exponents are strictly positive and the
/// variable list is sorted, so equal monomials have equal representations.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    exps: Vec<(VarId, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn var(v: VarId) -> Self {
        Monomial { exps: vec![(v, 1)] }
    }

    pub fn from_exps(mut exps: Vec<(VarId, u32)>) -> Self {
        exps.retain(|&(_, e)| e > 0);
        exps.sort_by_key(|&(v, _)| v);
        Monomial { exps }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exps(&self) -> &[(VarId, u32)] {
        &self.exps
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: VarId) -> u32 {
        self.exps
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        self.exps.iter().map(|&(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            match self.exps[i].0.cmp(&other.exps[j].0) {
                Ordering::Less => {
                    out.push(self.exps[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.exps[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.exps[i].0, self.exps[i].1 + other.exps[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.exps[i..]);
        out.extend_from_slice(&other.exps[j..]);
        Monomial { exps: out }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().all(|&(v, e)| other.exponent(v) >= e)
    }

    /// `other / self`; caller must ensure `self.divides(other)`.
    pub fn div_into(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(other.exps.len());
        for &(v, e) in &other.exps {
            let d = e - self.exponent(v);
            if d > 0 {
                out.push((v, d));
            }
        }
        Monomial { exps: out }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            match self.exps[i].0.cmp(&other.exps[j].0) {
                Ordering::Less => {
                    out.push(self.exps[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.exps[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.exps[i].0, self.exps[i].1.max(other.exps[j].1)));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.exps[i..]);
        out.extend_from_slice(&other.exps[j..]);
        Monomial { exps: out }
    }

    /// True if the lcm of the two monomials is their product (disjoint support).
    pub fn coprime(&self, other: &Monomial) -> bool {
        let mut i = 0;
        let mut j = 0;
        while i < self.exps.len() && j < other.exps.len() {
            match self.exps[i].0.cmp(&other.exps[j].0) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => return false,
            }
        }
        true
    }
}

/// `Ord` is the default degrevlex order; other orders go through
/// [`MonomialOrder::cmp_monomials`].
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_degrevlex(self, other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn cmp_degrevlex(a: &Monomial, b: &Monomial) -> Ordering {
    match a.total_degree().cmp(&b.total_degree()) {
        Ordering::Equal => {}
        ord => return ord,
    }
    // Equal degree: the monomial with the smaller exponent on the largest
    // variable where they differ is the larger one.
    let mut i = a.exps.len();
    let mut j = b.exps.len();
    while i > 0 || j > 0 {
        let va = if i > 0 { Some(a.exps[i - 1]) } else { None };
        let vb = if j > 0 { Some(b.exps[j - 1]) } else { None };
        match (va, vb) {
            (Some((x, ea)), Some((y, eb))) => match x.cmp(&y) {
                Ordering::Greater => return Ordering::Less,
                Ordering::Less => return Ordering::Greater,
                Ordering::Equal => {
                    if ea != eb {
                        return eb.cmp(&ea);
                    }
                    i -= 1;
                    j -= 1;
                }
            },
            (Some(_), None) => return Ordering::Less,
            (None, Some(_)) => return Ordering::Greater,
            (None, None) => unreachable!(),
        }
    }
    Ordering::Equal
}

fn cmp_lex(a: &Monomial, b: &Monomial) -> Ordering {
    let mut i = 0;
    let mut j = 0;
    loop {
        let va = a.exps.get(i);
        let vb = b.exps.get(j);
        match (va, vb) {
            (Some(&(x, ea)), Some(&(y, eb))) => match x.cmp(&y) {
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => {
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                    i += 1;
                    j += 1;
                }
            },
            (Some(_), None) => return Ordering::Greater,
            (None, Some(_)) => return Ordering::Less,
            (None, None) => return Ordering::Equal,
        }
    }
}

/// Monomial orders available for basis computations and printing.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum MonomialOrder {
    #[default]
    DegRevLex,
    Lex,
    GrLex,
}

impl MonomialOrder {
    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::DegRevLex => cmp_degrevlex(a, b),
            MonomialOrder::Lex => cmp_lex(a, b),
            MonomialOrder::GrLex => match a.total_degree().cmp(&b.total_degree()) {
                Ordering::Equal => cmp_lex(a, b),
                ord => ord,
            },
        }
    }
}

/// Sparse multivariate polynomial with exact coefficients.
///
/// The term map only contains nonzero coefficients; two polynomials over
/// the same ring are equal iff their term maps are equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    ring: CoefficientRing,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero(ring: CoefficientRing) -> Self {
        Polynomial {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: CoefficientRing, c: impl Into<BigInt>) -> Self {
        let mut p = Polynomial::zero(ring);
        p.add_term(Monomial::one(), c.into());
        p
    }

    pub fn one(ring: CoefficientRing) -> Self {
        Polynomial::constant(ring, 1)
    }

    pub fn variable(ring: CoefficientRing, v: VarId) -> Self {
        let mut p = Polynomial::zero(ring);
        p.add_term(Monomial::var(v), BigInt::one());
        p
    }

    pub fn from_terms(
        ring: CoefficientRing,
        terms: impl IntoIterator<Item = (Monomial, BigInt)>,
    ) -> Self {
        let mut p = Polynomial::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(Monomial::is_one)
    }

    /// The constant value of a constant polynomial.
    pub fn constant_value(&self) -> Option<BigInt> {
        if self.is_zero() {
            Some(BigInt::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    /// True if this polynomial is a unit of the ring (a constant +-1 over Z,
    /// any nonzero constant over Z/p).
    pub fn is_unit(&self) -> bool {
        self.constant_value()
            .map(|c| self.ring.is_unit(&c))
            .unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .unwrap_or(0)
    }

    pub fn vars(&self) -> Vec<VarId> {
        let mut vs: Vec<VarId> = self.terms.keys().flat_map(|m| m.vars()).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        let c = self.ring.normalize(c);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = self.ring.normalize(e.get() + c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// Leading term under `order` (largest monomial).
    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &BigInt)> {
        match order {
            MonomialOrder::DegRevLex => self.terms.iter().next_back(),
            _ => self
                .terms
                .iter()
                .max_by(|a, b| order.cmp_monomials(a.0, b.0)),
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.ring != other.ring {
            Err(PolyError::RingMismatch(self.ring, other.ring))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.ring);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        let mut out = Polynomial::zero(self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn mul_term(&self, m: &Monomial, c: &BigInt) -> Polynomial {
        let mut out = Polynomial::zero(self.ring);
        for (ma, ca) in &self.terms {
            out.add_term(ma.mul(m), ca * c);
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        self.mul_term(&Monomial::one(), c)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one(self.ring);
        for _ in 0..e {
            out = out.mul(self).expect("same ring");
        }
        out
    }

    /// Gcd of all coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Simultaneous substitution of the assigned variables; unassigned
    /// variables are left untouched. The empty assignment is the identity.
    pub fn substitute(
        &self,
        assignment: &BTreeMap<VarId, Polynomial>,
    ) -> Result<Polynomial, PolyError> {
        for img in assignment.values() {
            self.check_ring(img)?;
        }
        let mut out = Polynomial::zero(self.ring);
        for (m, c) in &self.terms {
            let mut untouched = Vec::new();
            let mut factor = Polynomial::constant(self.ring, c.clone());
            for &(v, e) in m.exps() {
                match assignment.get(&v) {
                    None => untouched.push((v, e)),
                    Some(img) => {
                        factor = factor.mul(&img.pow(e))?;
                    }
                }
            }
            let base = Monomial::from_exps(untouched);
            for (mf, cf) in &factor.terms {
                out.add_term(base.mul(mf), cf.clone());
            }
        }
        Ok(out)
    }

    /// Full evaluation; every variable of the polynomial must be assigned.
    pub fn evaluate_full(&self, point: &BTreeMap<VarId, BigInt>) -> Result<BigInt, PolyError> {
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.exps() {
                let val = point.get(&v).ok_or(PolyError::UnassignedVariable(v))?;
                for _ in 0..e {
                    t *= val;
                }
            }
            acc += t;
        }
        Ok(self.ring.normalize(acc))
    }

    /// Deterministic comparison used to sort generator lists: by leading
    /// monomial (degrevlex), then term by term.
    pub fn cmp_canonical(&self, other: &Polynomial) -> Ordering {
        let mut a = self.terms.iter().rev();
        let mut b = other.terms.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((ma, ca)), Some((mb, cb))) => {
                    match ma.cmp(mb) {
                        Ordering::Equal => {}
                        ord => return ord,
                    }
                    match ca.cmp(cb) {
                        Ordering::Equal => {}
                        ord => return ord,
                    }
                }
            }
        }
    }

    /// Canonical text form: terms in descending degrevlex, `*` for products,
    /// explicit `-` signs, `^` for powers. The zero polynomial prints as `0`.
    pub fn to_canonical_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mut parts = Vec::new();
            if !abs.is_one() || m.is_one() {
                parts.push(abs.to_string());
            }
            for &(v, e) in m.exps() {
                if e == 1 {
                    parts.push(v.to_string());
                } else {
                    parts.push(format!("{}^{}", v, e));
                }
            }
            out.push_str(&parts.join("*"));
        }
        out
    }

    /// Parse the canonical polynomial grammar: integer coefficients,
    /// variables `x<vertex>` or `x<vertex>_<copy>`, operators `+ - *`,
    /// `^` for powers, parentheses. Whitespace-insensitive.
    pub fn parse(ring: CoefficientRing, text: &str) -> Result<Polynomial, PolyError> {
        let mut p = Parser {
            ring,
            bytes: text.as_bytes(),
            pos: 0,
        };
        let poly = p.expr()?;
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return Err(PolyError::Parse(format!(
                "unexpected trailing input at byte {}",
                p.pos
            )));
        }
        Ok(poly)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_canonical_string())
    }
}

struct Parser<'a> {
    ring: CoefficientRing,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(op) = self.peek() {
            match op {
                b'+' => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?)?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.factor()?;
        // implicit product like `2x1` or `x1x2` is not part of the
        // grammar; require `*`
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, PolyError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| PolyError::Parse("exponent out of range".into()))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(PolyError::Parse("expected ')'".into()));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(self.atom()?.neg())
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Polynomial::constant(self.ring, n))
            }
            Some(b'x') => {
                self.pos += 1;
                let vertex = self.integer()?;
                let vertex: u32 = vertex
                    .try_into()
                    .map_err(|_| PolyError::Parse("vertex index out of range".into()))?;
                let copy = if self.bytes.get(self.pos) == Some(&b'_') {
                    self.pos += 1;
                    let c = self.integer()?;
                    c.try_into()
                        .map_err(|_| PolyError::Parse("copy index out of range".into()))?
                } else {
                    0
                };
                Ok(Polynomial::variable(self.ring, VarId::new(vertex, copy)))
            }
            other => Err(PolyError::Parse(format!(
                "unexpected token {:?} at byte {}",
                other.map(|c| c as char),
                self.pos
            ))),
        }
    }

    fn integer(&mut self) -> Result<i64, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(PolyError::Parse(format!(
                "expected integer at byte {}",
                start
            )));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| PolyError::Parse("integer out of range".into()))
    }
}

/// Exact division `num / den` when the division has no remainder.
/// Returns `None` if `den` does not divide `num` exactly.
pub fn divide_exact(num: &Polynomial, den: &Polynomial) -> Option<Polynomial> {
    if den.is_zero() {
        return None;
    }
    let ring = num.ring();
    let mut rem = num.clone();
    let mut quo = Polynomial::zero(ring);
    let (lm, lc) = den.leading_term(MonomialOrder::DegRevLex)?;
    let lm = lm.clone();
    let lc = lc.clone();
    while !rem.is_zero() {
        let (rm, rc) = rem.leading_term(MonomialOrder::DegRevLex)?;
        if !lm.divides(rm) {
            return None;
        }
        let q = match ring {
            CoefficientRing::Int => {
                let (q, r) = rc.div_rem(&lc);
                if !r.is_zero() {
                    return None;
                }
                q
            }
            CoefficientRing::Mod(_) => {
                let inv = ring.invert(&lc)?;
                ring.normalize(rc * inv)
            }
        };
        let m = lm.div_into(rm);
        let t = Polynomial::from_terms(ring, [(m.clone(), q.clone())]);
        quo = quo.add(&t).expect("same ring");
        rem = rem.sub(&den.mul_term(&m, &q)).expect("same ring");
    }
    Some(quo)
}
