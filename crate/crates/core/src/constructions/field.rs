//! Arithmetic in GF(p^k) for the small fields the matrix witnesses and the
//! projective-line constructions need.
//!
//! An element is stored as its coefficient vector packed into one integer:
//! `code = c_0 + c_1 p + ... + c_{k-1} p^{k-1}` for the polynomial
//! `c_0 + c_1 t + ... + c_{k-1} t^{k-1}` reduced modulo a fixed monic
//! irreducible polynomial. The moduli are the Conway polynomials, so `t` is
//! always a primitive element.

use thiserror::Error;

/// Largest field order with a shipped modulus.
pub const MAX_FIELD_ORDER: u32 = 4096;

/// `(p, k, coefficients of the monic modulus from degree 0 upwards)` for every
/// prime power `p^k <= 4096` with `k >= 2`. Conway polynomials.
const MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (2, 9, &[1, 0, 0, 0, 1, 0, 0, 0, 0, 1]),
    (2, 10, &[1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1]),
    (2, 11, &[1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 12, &[1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (3, 6, &[2, 2, 1, 0, 2, 0, 1]),
    (3, 7, &[1, 0, 2, 0, 0, 0, 0, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (5, 4, &[2, 4, 4, 0, 1]),
    (5, 5, &[3, 4, 0, 0, 0, 1]),
    (7, 2, &[3, 6, 1]),
    (7, 3, &[4, 0, 6, 1]),
    (7, 4, &[3, 4, 5, 0, 1]),
    (11, 2, &[2, 7, 1]),
    (11, 3, &[9, 2, 0, 1]),
    (13, 2, &[2, 12, 1]),
    (13, 3, &[11, 2, 0, 1]),
    (17, 2, &[3, 16, 1]),
    (19, 2, &[2, 18, 1]),
    (23, 2, &[5, 21, 1]),
    (29, 2, &[2, 24, 1]),
    (31, 2, &[3, 29, 1]),
    (37, 2, &[2, 33, 1]),
    (41, 2, &[6, 38, 1]),
    (43, 2, &[3, 42, 1]),
    (47, 2, &[5, 45, 1]),
    (53, 2, &[2, 49, 1]),
    (59, 2, &[2, 58, 1]),
    (61, 2, &[2, 60, 1]),
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("no shipped modulus for GF({0})")]
    Unsupported(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands from GF({0}) used in GF({1})")]
    FieldMismatch(u32, u32),
    #[error("{op} takes {expected} operand(s)")]
    Arity { op: &'static str, expected: usize },
}

/// Splits `q` as `p^k`.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    q: u32,
    code: u32,
}

impl FieldElement {
    pub fn code(self) -> u32 {
        self.code
    }

    pub fn field_order(self) -> u32 {
        self.q
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, low degree first, length `k + 1`.
    modulus: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Inv,
    Pow(u64),
}

impl Field {
    pub fn new(q: u32) -> Result<Field, FieldError> {
        let (p, k) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        if q > MAX_FIELD_ORDER {
            return Err(FieldError::Unsupported(q));
        }
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            MODULI
                .iter()
                .find(|&&(mp, mk, _)| mp == p && mk == k)
                .map(|&(_, _, m)| m.to_vec())
                .ok_or(FieldError::Unsupported(q))?
        };
        Ok(Field { p, k, q, modulus })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        self.elem(0)
    }

    pub fn one(&self) -> FieldElement {
        self.elem(1)
    }

    /// Element with the given packed code; panics if out of range.
    pub fn elem(&self, code: u32) -> FieldElement {
        assert!(code < self.q, "code {code} outside GF({})", self.q);
        FieldElement { q: self.q, code }
    }

    /// Image of an integer under the prime-field embedding.
    pub fn from_int(&self, n: i64) -> FieldElement {
        self.elem(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(|c| self.elem(c))
    }

    /// A generator of the multiplicative group: `t` for extension fields,
    /// the least primitive root for prime fields.
    pub fn primitive_element(&self) -> FieldElement {
        if self.k > 1 {
            return self.elem(self.p);
        }
        (1..self.q)
            .map(|c| self.elem(c))
            .find(|&g| self.mult_order(g) == (self.q - 1) as u64)
            .expect("prime fields are cyclic")
    }

    pub fn coefficients(&self, x: FieldElement) -> Vec<u32> {
        let mut c = x.code;
        (0..self.k)
            .map(|_| {
                let d = c % self.p;
                c /= self.p;
                d
            })
            .collect()
    }

    fn pack(&self, coeffs: &[u32]) -> FieldElement {
        let code = coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c);
        self.elem(code)
    }

    fn same(&self, x: FieldElement) -> Result<(), FieldError> {
        if x.q == self.q {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch(x.q, self.q))
        }
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        let (a, b) = (self.coefficients(x), self.coefficients(y));
        let s: Vec<u32> = a.iter().zip(&b).map(|(u, v)| (u + v) % self.p).collect();
        self.pack(&s)
    }

    pub fn neg(&self, x: FieldElement) -> FieldElement {
        let s: Vec<u32> = self.coefficients(x).iter().map(|&u| (self.p - u) % self.p).collect();
        self.pack(&s)
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    /// Schoolbook product followed by reduction modulo the monic modulus.
    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        let (a, b) = (self.coefficients(x), self.coefficients(y));
        let k = self.k as usize;
        let p = self.p as u64;
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &u) in a.iter().enumerate() {
            for (j, &v) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u as u64 * v as u64) % p;
            }
        }
        for deg in (k..prod.len()).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            // t^k = -(m_0 + ... + m_{k-1} t^{k-1})
            for (i, &m) in self.modulus[..k].iter().enumerate() {
                let idx = deg - k + i;
                prod[idx] = (prod[idx] + c * (p - m as u64 % p)) % p;
            }
        }
        let coeffs: Vec<u32> = prod[..k].iter().map(|&c| c as u32).collect();
        self.pack(&coeffs)
    }

    pub fn pow(&self, x: FieldElement, mut e: u64) -> FieldElement {
        let mut acc = self.one();
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement, FieldError> {
        if x.code == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow(x, (self.q - 2) as u64))
    }

    pub fn mult_order(&self, x: FieldElement) -> u64 {
        assert!(x.code != 0);
        let mut k = 1;
        let mut y = x;
        while y != self.one() {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Checked arithmetic entry point: validates that every operand belongs
    /// to this field.
    pub fn apply(&self, op: FieldOp, operands: &[FieldElement]) -> Result<FieldElement, FieldError> {
        for &x in operands {
            self.same(x)?;
        }
        let want = |n: usize, name: &'static str| {
            if operands.len() == n {
                Ok(())
            } else {
                Err(FieldError::Arity { op: name, expected: n })
            }
        };
        match op {
            FieldOp::Add => {
                want(2, "add")?;
                Ok(self.add(operands[0], operands[1]))
            }
            FieldOp::Mul => {
                want(2, "mul")?;
                Ok(self.mul(operands[0], operands[1]))
            }
            FieldOp::Inv => {
                want(1, "inv")?;
                self.inv(operands[0])
            }
            FieldOp::Pow(e) => {
                want(1, "pow")?;
                Ok(self.pow(operands[0], e))
            }
        }
    }
}

/// 3x3 matrices over one field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Matrix3 {
    pub entries: [[FieldElement; 3]; 3],
}

impl Matrix3 {
    pub fn from_fn(mut f: impl FnMut(usize, usize) -> FieldElement) -> Matrix3 {
        let entries = std::array::from_fn(|i| std::array::from_fn(|j| f(i, j)));
        Matrix3 { entries }
    }

    pub fn identity(field: &Field) -> Matrix3 {
        Self::from_fn(|i, j| if i == j { field.one() } else { field.zero() })
    }

    pub fn diag(field: &Field, d: [FieldElement; 3]) -> Matrix3 {
        Self::from_fn(|i, j| if i == j { d[i] } else { field.zero() })
    }

    pub fn mul(&self, other: &Matrix3, field: &Field) -> Matrix3 {
        Self::from_fn(|i, j| {
            (0..3).fold(field.zero(), |acc, k| {
                field.add(acc, field.mul(self.entries[i][k], other.entries[k][j]))
            })
        })
    }

    pub fn det(&self, field: &Field) -> FieldElement {
        let m = &self.entries;
        let term = |a: usize, b: usize, c: usize| field.mul(m[0][a], field.mul(m[1][b], m[2][c]));
        let pos = field.add(field.add(term(0, 1, 2), term(1, 2, 0)), term(2, 0, 1));
        let neg = field.add(field.add(term(2, 1, 0), term(0, 2, 1)), term(1, 0, 2));
        field.sub(pos, neg)
    }

    /// `Some(c)` when the matrix equals `c * I`.
    pub fn as_scalar(&self) -> Option<FieldElement> {
        let c = self.entries[0][0];
        let zero = FieldElement { q: c.q, code: 0 };
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { c } else { zero };
                if self.entries[i][j] != want {
                    return None;
                }
            }
        }
        Some(c)
    }

    /// True when `self = c * other` for some scalar `c`.
    pub fn is_scalar_multiple_of(&self, other: &Matrix3, field: &Field) -> bool {
        let Some((i, j)) = (0..9)
            .map(|t| (t / 3, t % 3))
            .find(|&(i, j)| other.entries[i][j].code != 0)
        else {
            return self.entries.iter().flatten().all(|x| x.code == 0);
        };
        let Ok(inv) = field.inv(other.entries[i][j]) else {
            return false;
        };
        let c = field.mul(self.entries[i][j], inv);
        (0..9).all(|t| {
            let (r, s) = (t / 3, t % 3);
            self.entries[r][s] == field.mul(c, other.entries[r][s])
        })
    }

    /// Transpose with every entry raised to the `frob`-th power.
    pub fn conjugate_transpose(&self, field: &Field, frob: u64) -> Matrix3 {
        Self::from_fn(|i, j| field.pow(self.entries[j][i], frob))
    }
}
