//! Sparse multivariate polynomials in at most four variables over GF(2^m).
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`] in graded
//! lexicographic order, so iteration and printing are deterministic.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::ff2k::{write_u_poly, FieldCtx, FieldElement};
use crate::geometry::ProjPoint;
use crate::linalg::Matrix;

pub const MAX_VARS: usize = 4;

/// Exponent vector; unused trailing variables carry exponent 0.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(pub [u8; MAX_VARS]);

impl Monomial {
    pub fn degree(self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exp(self, i: usize) -> u8 {
        self.0[i]
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        Monomial(e)
    }

    /// Product of monomials; panics if an exponent leaves `u8`.
    pub fn mul(self, other: Monomial) -> Monomial {
        let mut e = [0u8; MAX_VARS];
        for (i, slot) in e.iter_mut().enumerate() {
            *slot = self.0[i]
                .checked_add(other.0[i])
                .expect("monomial exponent overflow");
        }
        Monomial(e)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded lexicographic order with `x1 > x2 > x3 > x4`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{name}` at position {pos}")]
    UnknownIdentifier { pos: usize, name: String },
    #[error("variable `{name}` at position {pos} is not available with {nvars} variables")]
    VariableOutOfRange {
        pos: usize,
        name: String,
        nvars: usize,
    },
    #[error("exponent too large at position {pos}")]
    ExponentTooLarge { pos: usize },
    #[error("polynomial is not homogeneous of degree {expected} (found a term of degree {found})")]
    Inhomogeneous { expected: u32, found: u32 },
    #[error("substitution matrix must be an invertible {n}x{n} matrix")]
    SingularMatrix { n: usize },
    #[error("number of variables must be between 1 and 4, got {0}")]
    BadArity(usize),
}

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    field: FieldCtx,
    nvars: usize,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.nvars, self)
    }
}

const VAR_NAMES: [&str; MAX_VARS] = ["x1", "x2", "x3", "x4"];

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (mono, coef)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            let bits = coef.bits();
            if mono.degree() == 0 || bits != 1 {
                let mut s = String::new();
                write_u_poly(&mut s, bits)?;
                if bits.count_ones() > 1 && mono.degree() > 0 {
                    s = format!("({s})");
                }
                parts.push(s);
            }
            for (i, &e) in mono.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(VAR_NAMES[i].to_string()),
                    _ => parts.push(format!("{}^{}", VAR_NAMES[i], e)),
                }
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

impl MultiPoly {
    pub fn zero(field: &FieldCtx, nvars: usize) -> Self {
        assert!((1..=MAX_VARS).contains(&nvars), "nvars must be 1..=4");
        MultiPoly {
            field: field.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &FieldCtx, nvars: usize, c: FieldElement) -> Self {
        Self::from_terms(field, nvars, [(Monomial::default(), c)])
    }

    /// The variable `x_{i+1}`.
    pub fn var(field: &FieldCtx, nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        Self::from_terms(field, nvars, [(Monomial::var(i), field.one())])
    }

    /// Builds a polynomial, merging repeated monomials and dropping zeros.
    pub fn from_terms(
        field: &FieldCtx,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, FieldElement)>,
    ) -> Self {
        let mut p = Self::zero(field, nvars);
        for (m, c) in terms {
            assert!(
                m.0[nvars..].iter().all(|&e| e == 0),
                "monomial uses a variable beyond nvars"
            );
            p.add_term(m, field.adopt(c).expect("coefficient from another field"));
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(|| self.field.zero());
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Monomial, FieldElement)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    pub fn coeff(&self, m: Monomial) -> FieldElement {
        self.terms
            .get(&m)
            .copied()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Largest total degree of a term; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// The common degree of all terms, if the polynomial is homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.degree());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn require_homogeneous(&self, degree: u32) -> Result<(), PolyError> {
        match self.terms.keys().map(|m| m.degree()).find(|&e| e != degree) {
            Some(found) => Err(PolyError::Inhomogeneous {
                expected: degree,
                found,
            }),
            None => Ok(()),
        }
    }

    /// Same polynomial viewed in a different number of variables.
    pub fn with_nvars(&self, nvars: usize) -> Self {
        Self::from_terms(&self.field, nvars, self.terms())
    }

    /// Terms of total degree exactly `d`.
    pub fn graded_part(&self, d: u32) -> Self {
        Self::from_terms(
            &self.field,
            self.nvars,
            self.terms().filter(|(m, _)| m.degree() == d),
        )
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, c);
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.assert_compatible(other);
        let mut out = Self::zero(&self.field, self.nvars);
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                out.add_term(ma.mul(mb), self.field.mul(ca, cb));
            }
        }
        out
    }

    pub fn scale(&self, c: FieldElement) -> MultiPoly {
        Self::from_terms(
            &self.field,
            self.nvars,
            self.terms().map(|(m, x)| (m, self.field.mul(x, c))),
        )
    }

    pub fn pow(&self, mut k: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = Self::constant(&self.field, self.nvars, self.field.one());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Squaring is additive in characteristic 2.
    pub fn square(&self) -> MultiPoly {
        Self::from_terms(
            &self.field,
            self.nvars,
            self.terms()
                .map(|(m, c)| (m.mul(m), self.field.frobenius(c))),
        )
    }

    fn assert_compatible(&self, other: &MultiPoly) {
        assert!(
            self.field == other.field,
            "polynomials over different fields"
        );
        assert_eq!(
            self.nvars, other.nvars,
            "polynomials in different numbers of variables"
        );
    }

    pub fn eval(&self, point: &[FieldElement]) -> FieldElement {
        assert_eq!(
            point.len(),
            self.nvars,
            "point has the wrong number of coordinates"
        );
        let raw: Vec<u32> = point
            .iter()
            .map(|&x| {
                self.field
                    .adopt(x)
                    .expect("coordinate from another field")
                    .bits()
            })
            .collect();
        self.field.wrap(self.eval_raw(&raw))
    }

    pub(crate) fn eval_raw(&self, point: &[u32]) -> u32 {
        let f = &self.field;
        let mut acc = 0;
        for (m, c) in self.terms() {
            let mut t = c.bits();
            for (i, &e) in m.0[..self.nvars].iter().enumerate() {
                if e > 0 {
                    t = f.mul_raw(t, f.pow_raw(point[i], e as u64));
                }
            }
            acc ^= t;
        }
        acc
    }

    /// Formal partial derivative with respect to `x_{i+1}`.
    pub fn partial(&self, i: usize) -> MultiPoly {
        assert!(i < self.nvars, "variable index out of range");
        Self::from_terms(
            &self.field,
            self.nvars,
            self.terms()
                .filter(|(m, _)| m.0[i] % 2 == 1)
                .map(|(mut m, c)| {
                    m.0[i] -= 1;
                    (m, c)
                }),
        )
    }

    pub fn gradient(&self) -> Vec<MultiPoly> {
        (0..self.nvars).map(|i| self.partial(i)).collect()
    }

    /// `sum_i x_i * dp/dx_i`, which equals `deg(p) * p` for homogeneous `p`.
    pub fn euler_residual(&self) -> MultiPoly {
        let mut out = Self::zero(&self.field, self.nvars);
        for i in 0..self.nvars {
            out = out.add(&Self::var(&self.field, self.nvars, i).mul(&self.partial(i)));
        }
        out
    }

    /// Substitutes `images[i]` for `x_{i+1}`.
    pub fn compose(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let target = images.first().map_or(self.nvars, |p| p.nvars);
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|p| {
                vec![
                    Self::constant(&self.field, target, self.field.one()),
                    p.clone(),
                ]
            })
            .collect();
        let mut out = Self::zero(&self.field, target);
        for (m, c) in self.terms() {
            let mut t = Self::constant(&self.field, target, c);
            for (i, &e) in m.0[..self.nvars].iter().enumerate() {
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e]);
            }
            out = out.add(&t);
        }
        out
    }

    /// `p(x M)`: each `x_j` becomes `sum_i M[i][j] x_i`. With this convention
    /// `linear_substitute(p, M N) = linear_substitute(linear_substitute(p, N), M)`.
    pub fn linear_substitute(&self, m: &Matrix) -> Result<MultiPoly, PolyError> {
        let n = self.nvars;
        if m.rows() != n || m.cols() != n || m.inverse(&self.field).is_none() {
            return Err(PolyError::SingularMatrix { n });
        }
        let images: Vec<MultiPoly> = (0..n)
            .map(|j| linear_form(&self.field, &(0..n).map(|i| m[(i, j)]).collect::<Vec<_>>()))
            .collect();
        Ok(self.compose(&images))
    }

    /// The square root if every exponent is even.
    pub fn is_square(&self) -> Option<MultiPoly> {
        if self.terms.keys().any(|m| m.0.iter().any(|e| e % 2 == 1)) {
            return None;
        }
        Some(Self::from_terms(
            &self.field,
            self.nvars,
            self.terms().map(|(m, c)| {
                let mut h = m;
                for e in h.0.iter_mut() {
                    *e /= 2;
                }
                (h, self.field.sqrt(c))
            }),
        ))
    }

    /// Dense coefficient vector over the monomials of degree `d`, in graded-lex order.
    pub fn coefficient_vector(&self, d: u32) -> Vec<FieldElement> {
        monomials_of_degree(self.nvars, d)
            .into_iter()
            .map(|m| self.coeff(m))
            .collect()
    }
}

/// Linear form `sum_i c_i x_i`.
pub fn linear_form(field: &FieldCtx, coeffs: &[FieldElement]) -> MultiPoly {
    MultiPoly::from_terms(
        field,
        coeffs.len(),
        coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| (Monomial::var(i), c)),
    )
}

/// All monomials of total degree `d` in `nvars` variables, increasing graded-lex.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(i: usize, nvars: usize, left: u32, cur: &mut [u8; MAX_VARS], out: &mut Vec<Monomial>) {
        if i + 1 == nvars {
            cur[i] = left as u8;
            out.push(Monomial(*cur));
            cur[i] = 0;
            return;
        }
        for e in 0..=left {
            cur[i] = e as u8;
            rec(i + 1, nvars, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(0, nvars, d, &mut [0; MAX_VARS], &mut out);
    out.sort();
    out
}

/// The `i`-th elementary symmetric polynomial in four variables.
pub fn elementary_symmetric(field: &FieldCtx, i: usize) -> MultiPoly {
    assert!(
        (1..=4).contains(&i),
        "elementary symmetric index must be 1..=4"
    );
    let mut p = MultiPoly::zero(field, 4);
    for mask in 0u8..16 {
        if mask.count_ones() as usize == i {
            let mut e = [0u8; 4];
            for (k, slot) in e.iter_mut().enumerate() {
                *slot = mask >> k & 1;
            }
            p.add_term(Monomial(e), field.one());
        }
    }
    p
}

impl std::ops::Add<&MultiPoly> for MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        MultiPoly::add(&self, rhs)
    }
}

impl std::ops::Mul<&MultiPoly> for MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        MultiPoly::mul(&self, rhs)
    }
}

// ---- parsing ----

/// Parses a polynomial in `nvars` variables.
///
/// Grammar: sums (`+`, with `-` read as `+`), products (`*`), powers (`^`),
/// parentheses, variables `x1`..`x4` (`z` and `w` alias `x4`), the field
/// element `u` (residue of `t`), `omega` (the element of order 3 generating
/// GF(4), when the field contains it), and integer literals read mod 2.
pub fn parse(text: &str, field: &FieldCtx, nvars: usize) -> Result<MultiPoly, PolyError> {
    if !(1..=MAX_VARS).contains(&nvars) {
        return Err(PolyError::BadArity(nvars));
    }
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        field,
        nvars,
    };
    p.skip_ws();
    if p.peek().is_none() {
        return Err(p.error("empty input"));
    }
    let poly = p.sum()?;
    p.skip_ws();
    if p.peek().is_some() {
        return Err(p.error("unexpected character"));
    }
    Ok(poly)
}

/// Parses and checks homogeneity of the given degree.
pub fn parse_homogeneous(
    text: &str,
    field: &FieldCtx,
    nvars: usize,
    degree: u32,
) -> Result<MultiPoly, PolyError> {
    let p = parse(text, field, nvars)?;
    p.require_homogeneous(degree)?;
    Ok(p)
}

/// Parses a single field element (a constant expression).
pub fn parse_element(text: &str, field: &FieldCtx) -> Result<FieldElement, PolyError> {
    let p = parse(text, field, 1)?;
    if p.total_degree().unwrap_or(0) > 0 {
        return Err(PolyError::Syntax {
            pos: 0,
            msg: "expected a constant".into(),
        });
    }
    Ok(p.coeff(Monomial::default()))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: &'a FieldCtx,
    nvars: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> PolyError {
        PolyError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self
            .src
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<MultiPoly, PolyError> {
        self.skip_ws();
        if matches!(self.peek(), Some(b'+' | b'-')) {
            self.pos += 1;
        }
        let mut acc = self.product()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+' | b'-') => {
                    self.pos += 1;
                    let t = self.product()?;
                    acc = acc.add(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.power()?;
        loop {
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                let f = self.power()?;
                acc = acc.mul(&f);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<MultiPoly, PolyError> {
        let mut base = self.atom()?;
        loop {
            self.skip_ws();
            if self.peek() != Some(b'^') {
                return Ok(base);
            }
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let e = self.natural()?;
            base = match base.total_degree() {
                None => {
                    if e == 0 {
                        MultiPoly::constant(self.field, self.nvars, self.field.one())
                    } else {
                        base
                    }
                }
                Some(0) => {
                    let c = base.coeff(Monomial::default());
                    MultiPoly::constant(self.field, self.nvars, self.field.pow(c, e))
                }
                Some(d) => {
                    if (d as u64).saturating_mul(e) > u8::MAX as u64 {
                        return Err(PolyError::ExponentTooLarge { pos: at });
                    }
                    base.pow(e as u32)
                }
            };
        }
    }

    fn natural(&mut self) -> Result<u64, PolyError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| PolyError::ExponentTooLarge { pos: start })
    }

    fn atom(&mut self) -> Result<MultiPoly, PolyError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.natural()?;
                let c = if n % 2 == 1 {
                    self.field.one()
                } else {
                    self.field.zero()
                };
                Ok(MultiPoly::constant(self.field, self.nvars, c))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                while self
                    .peek()
                    .is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let var = match name {
                    "x1" => Some(0),
                    "x2" => Some(1),
                    "x3" => Some(2),
                    "x4" | "z" | "w" => Some(3),
                    _ => None,
                };
                if let Some(i) = var {
                    if i >= self.nvars {
                        return Err(PolyError::VariableOutOfRange {
                            pos: start,
                            name: name.to_string(),
                            nvars: self.nvars,
                        });
                    }
                    return Ok(MultiPoly::var(self.field, self.nvars, i));
                }
                let c = match name {
                    "u" => self.field.u(),
                    "omega" => self.field.subfield_generator(2).map_err(|_| {
                        PolyError::UnknownIdentifier {
                            pos: start,
                            name: name.to_string(),
                        }
                    })?,
                    _ => {
                        return Err(PolyError::UnknownIdentifier {
                            pos: start,
                            name: name.to_string(),
                        })
                    }
                };
                Ok(MultiPoly::constant(self.field, self.nvars, c))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

// ---- Taylor development at a point ----

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TaylorError {
    #[error("Taylor development needs a polynomial in 4 variables")]
    NotFourVariables,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("point {0} is not a singular point of the surface")]
    NotSingular(String),
}

/// Local expansion of a surface at a singular point moved to `(0:0:0:1)`:
/// `F(y M) = z^(d-2) q(y) + z^(d-3) g(y) + z^(d-4) b(y)` for a degree `d`
/// surface, with `z = y4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaylorTriple {
    pub q: MultiPoly,
    pub g: MultiPoly,
    pub b: MultiPoly,
    /// Rows are the images of the new basis vectors; the last row is the point.
    pub transform: Matrix,
    /// Homogeneous parts of the local equation `F(y1, y2, y3, 1)` by degree.
    pub parts: Vec<MultiPoly>,
}

impl TaylorTriple {
    /// Lowest degree of a nonzero local part.
    pub fn multiplicity(&self) -> Option<u32> {
        self.parts
            .iter()
            .position(|p| !p.is_zero())
            .map(|k| k as u32)
    }
}

/// Coordinate change `x = y M` taking `(0:0:0:1)` to `p`: the other rows are
/// the standard basis vectors except the one at the pivot coordinate.
pub fn frame_at_point(field: &FieldCtx, p: &ProjPoint) -> Matrix {
    let coords = p.coords();
    let n = coords.len();
    let k = coords
        .iter()
        .position(|c| c.is_one())
        .expect("normalized point");
    let mut rows = Vec::with_capacity(n);
    for j in (0..n).filter(|&j| j != k) {
        let mut r = vec![field.zero(); n];
        r[j] = field.one();
        rows.push(r);
    }
    rows.push(coords.to_vec());
    Matrix::from_rows(rows)
}

/// The Taylor development of `f` at the singular point `p`.
pub fn taylor_at_singular_point(f: &MultiPoly, p: &ProjPoint) -> Result<TaylorTriple, TaylorError> {
    if f.nvars() != 4 || p.coords().len() != 4 {
        return Err(TaylorError::NotFourVariables);
    }
    let d = f.homogeneous_degree().ok_or(TaylorError::NotHomogeneous)?;
    let field = f.field();
    let pt = p.coords();
    if !f.eval(pt).is_zero() || f.gradient().iter().any(|g| !g.eval(pt).is_zero()) {
        return Err(TaylorError::NotSingular(p.to_string()));
    }
    let m = frame_at_point(field, p);
    let g = f.linear_substitute(&m).expect("frame is invertible");
    let mut parts = vec![MultiPoly::zero(field, 3); d as usize + 1];
    for (mono, c) in g.terms() {
        let z = mono.0[3] as usize;
        let mut local = mono;
        local.0[3] = 0;
        parts[d as usize - z].add_term(local, c);
    }
    let part = |k: usize| {
        parts
            .get(k)
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(field, 3))
    };
    Ok(TaylorTriple {
        q: part(2),
        g: part(3),
        b: part(4),
        transform: m,
        parts,
    })
}
