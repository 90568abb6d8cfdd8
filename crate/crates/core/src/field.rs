//! Table-driven arithmetic in the finite fields F_q for prime powers
//! 4 <= q <= 32.
//!
//! Elements are identified by an index in `0..q`. The element of index `i`
//! is the polynomial over F_p whose coefficients are the base-p digits of
//! `i`, reduced modulo a fixed irreducible polynomial. Index 0 is zero and
//! index 1 is one. Every operation is a lookup in tables built once at
//! construction, so a [`FieldSpec`] can be shared freely between threads.

use crate::error::{Error, Result};

/// The prime powers q with 4 <= q <= 32.
pub const SUPPORTED_ORDERS: [u32; 16] = [4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32];

/// Fixed moduli for the extension fields, one per order: the
/// lexicographically smallest monic irreducible polynomial of the right
/// degree, coefficients listed from the constant term up (leading 1
/// included). Fixing these keeps element indices reproducible.
const MODULI: &[(u32, &[u8])] = &[
    (4, &[1, 1, 1]),           // x^2 + x + 1 over F_2
    (8, &[1, 1, 0, 1]),        // x^3 + x + 1 over F_2
    (9, &[1, 0, 1]),           // x^2 + 1 over F_3
    (16, &[1, 1, 0, 0, 1]),    // x^4 + x + 1 over F_2
    (25, &[2, 0, 1]),          // x^2 + 2 over F_5
    (27, &[1, 2, 0, 1]),       // x^3 + 2x + 1 over F_3
    (32, &[1, 0, 1, 0, 0, 1]), // x^5 + x^2 + 1 over F_2
];

/// An element of F_q, identified by its index in the canonical enumeration.
///
/// Elements only make sense relative to the [`FieldSpec`] they came from;
/// all arithmetic goes through the spec.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u8);

impl FieldElement {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Arithmetic tables for one field F_q.
#[derive(Clone)]
pub struct FieldSpec {
    q: u32,
    p: u32,
    m: u32,
    modulus: Vec<u8>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    /// is-square flags, populated for odd q only.
    squares: Vec<bool>,
    /// square roots (squaring is a bijection), populated for even q only.
    sqrt: Vec<u8>,
    /// absolute traces down to F_2, populated for even q only.
    trace: Vec<u8>,
    beta: FieldElement,
}

impl std::fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldSpec")
            .field("q", &self.q)
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .finish()
    }
}

/// Builds the field of order q. Fails unless q is a prime power in 4..=32.
pub fn field_new(q: u32) -> Result<FieldSpec> {
    FieldSpec::new(q)
}

impl FieldSpec {
    pub fn new(q: u32) -> Result<Self> {
        if !(4..=32).contains(&q) {
            return Err(Error::OutOfSupportedRange(q));
        }
        let (p, m) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        let modulus: Vec<u8> = if m == 1 {
            vec![0, 1] // x itself; F_p[x]/(x) = F_p
        } else {
            MODULI
                .iter()
                .find(|(order, _)| *order == q)
                .expect("modulus table covers every supported extension field")
                .1
                .to_vec()
        };
        assert!(
            is_irreducible(&modulus, p),
            "built-in modulus for q = {q} must be irreducible"
        );

        let qi = q as usize;
        let mut add = vec![0u8; qi * qi];
        let mut mul = vec![0u8; qi * qi];
        for a in 0..qi {
            for b in 0..qi {
                add[a * qi + b] = add_indices(a, b, p, m);
                mul[a * qi + b] = mul_indices(a, b, p, m, &modulus);
            }
        }
        let mut neg = vec![0u8; qi];
        let mut inv = vec![0u8; qi];
        for a in 0..qi {
            neg[a] = (0..qi)
                .find(|&b| add[a * qi + b] == 0)
                .expect("additive inverse exists") as u8;
            if a != 0 {
                inv[a] = (1..qi)
                    .find(|&b| mul[a * qi + b] == 1)
                    .expect("multiplicative inverse exists") as u8;
            }
        }

        let mut squares = Vec::new();
        let mut sqrt = Vec::new();
        let mut trace = Vec::new();
        if p == 2 {
            sqrt = vec![0u8; qi];
            for a in 0..qi {
                sqrt[mul[a * qi + a] as usize] = a as u8;
            }
            trace = (0..qi)
                .map(|a| {
                    // sum of the m Frobenius conjugates x^(2^k); lands in F_2
                    let mut acc = 0usize;
                    let mut power = a;
                    for _ in 0..m {
                        acc = add[acc * qi + power] as usize;
                        power = mul[power * qi + power] as usize;
                    }
                    debug_assert!(acc <= 1);
                    acc as u8
                })
                .collect();
        } else {
            squares = vec![false; qi];
            for a in 0..qi {
                squares[mul[a * qi + a] as usize] = true;
            }
        }

        let beta = if p == 2 {
            (1..qi).find(|&a| trace[a] == 1)
        } else {
            (1..qi).find(|&a| !squares[a])
        }
        .map(|a| FieldElement(a as u8))
        .expect("beta exists for every q >= 4");

        Ok(Self { q, p, m, modulus, add, mul, neg, inv, squares, sqrt, trace, beta })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.m
    }

    /// Modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    pub fn element(&self, index: usize) -> FieldElement {
        assert!(index < self.q as usize, "element index {index} out of range for F_{}", self.q);
        FieldElement(index as u8)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q as u8).map(FieldElement)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// The image of an integer under Z -> F_q (reduction mod p into the
    /// prime subfield). Negative inputs are fine.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let p = self.p as i64;
        FieldElement(n.rem_euclid(p) as u8)
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        FieldElement(self.add[x.index() * self.q as usize + y.index()])
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        FieldElement(self.mul[x.index() * self.q as usize + y.index()])
    }

    pub fn neg(&self, x: FieldElement) -> FieldElement {
        FieldElement(self.neg[x.index()])
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(FieldElement(self.inv[x.index()]))
    }

    pub fn div(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// 1 + 1, i.e. the scalar 2. Zero in characteristic 2, which is what
    /// makes the formal derivatives downstream characteristic-aware.
    pub fn two(&self) -> FieldElement {
        self.add(self.one(), self.one())
    }

    /// Whether x is a square. Only defined for odd q.
    pub fn is_square(&self, x: FieldElement) -> Result<bool> {
        if self.p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        Ok(self.squares[x.index()])
    }

    /// The unique square root of x. Only defined for even q, where squaring
    /// is the Frobenius and hence a bijection.
    pub fn sqrt(&self, x: FieldElement) -> Result<FieldElement> {
        if self.p != 2 {
            return Err(Error::OddCharacteristic);
        }
        Ok(FieldElement(self.sqrt[x.index()]))
    }

    /// Absolute trace down to F_2: x + x^2 + x^4 + ... Only for even q.
    pub fn absolute_trace(&self, x: FieldElement) -> Result<u8> {
        if self.p != 2 {
            return Err(Error::OddCharacteristic);
        }
        Ok(self.trace[x.index()])
    }

    /// The canonical beta for the third conic family: for odd q the
    /// smallest-index nonzero non-square, for even q the smallest-index
    /// element of absolute trace 1 (equivalently, T^2 + T + beta has no
    /// root in F_q).
    pub fn pick_beta(&self) -> FieldElement {
        self.beta
    }
}

/// Decomposes q as p^m with p prime, if possible.
fn prime_power(q: u32) -> Option<(u32, u32)> {
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut m = 0;
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

fn digits(index: usize, p: u32, m: u32) -> Vec<u8> {
    let mut digs = vec![0u8; m as usize];
    let mut rest = index as u32;
    for d in digs.iter_mut() {
        *d = (rest % p) as u8;
        rest /= p;
    }
    digs
}

fn index_of(digs: &[u8], p: u32) -> u8 {
    digs.iter().rev().fold(0u32, |acc, &d| acc * p + d as u32) as u8
}

fn add_indices(a: usize, b: usize, p: u32, m: u32) -> u8 {
    let da = digits(a, p, m);
    let db = digits(b, p, m);
    let sum: Vec<u8> = da
        .iter()
        .zip(&db)
        .map(|(&x, &y)| ((x as u32 + y as u32) % p) as u8)
        .collect();
    index_of(&sum, p)
}

fn mul_indices(a: usize, b: usize, p: u32, m: u32, modulus: &[u8]) -> u8 {
    let da = digits(a, p, m);
    let db = digits(b, p, m);
    let mut prod = vec![0u32; 2 * m as usize];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u32 * y as u32) % p;
        }
    }
    // reduce modulo the monic modulus of degree m
    for i in (m as usize..prod.len()).rev() {
        let coeff = prod[i];
        if coeff != 0 {
            prod[i] = 0;
            for (k, &c) in modulus.iter().enumerate().take(m as usize) {
                let idx = i - m as usize + k;
                prod[idx] = (prod[idx] + coeff * (p - c as u32)) % p;
            }
        }
    }
    let digs: Vec<u8> = prod[..m as usize].iter().map(|&c| c as u8).collect();
    index_of(&digs, p)
}

/// Exhaustive irreducibility test, feasible at these degrees: a polynomial
/// of degree m is reducible iff it has a monic factor of degree 1..=m/2.
fn is_irreducible(poly: &[u8], p: u32) -> bool {
    let m = poly.len() - 1;
    if m == 1 {
        return true;
    }
    for d in 1..=m / 2 {
        // iterate all monic polynomials of degree d over F_p
        let count = (p as usize).pow(d as u32);
        for code in 0..count {
            let mut candidate = digits(code, p, d as u32);
            candidate.push(1);
            if poly_rem(poly, &candidate, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn poly_rem(num: &[u8], den: &[u8], p: u32) -> Vec<u8> {
    let mut rem: Vec<u32> = num.iter().map(|&c| c as u32).collect();
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1, "divisor must be monic");
    for i in (dd..rem.len()).rev() {
        let coeff = rem[i];
        if coeff != 0 {
            rem[i] = 0;
            for (k, &c) in den.iter().enumerate().take(dd) {
                let idx = i - dd + k;
                rem[idx] = (rem[idx] + coeff * (p - c as u32)) % p;
            }
        }
    }
    rem.truncate(dd);
    rem.iter().map(|&c| c as u8).collect()
}
