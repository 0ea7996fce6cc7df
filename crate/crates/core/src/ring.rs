//! Arithmetic in `R_n = F2[x]/(x^n - 1)` and the handful of
//! number-theoretic facts the code constructions lean on.
//!
//! Neighborhood polynomials of a labeled graph live in `R_n`, so the
//! decoders do all their syndrome algebra here. The factorization
//! structure of `x^n - 1 = (x + 1) * M_n(x)` — with `M_n` the all-ones
//! polynomial of degree `n - 1` — is what makes the constructions work:
//! every binomial `x^l + 1` shares exactly the factor `x + 1` with
//! `x^n - 1` and is coprime to `M_n`.

use crate::bits::BitVec;

/// Element of `R_n = F2[x]/(x^n - 1)`: a bit per coefficient, exponent
/// arithmetic always modulo `n`.
#[derive(Clone, PartialEq, Eq)]
pub struct RingPoly {
    n: usize,
    coeffs: BitVec,
}

impl RingPoly {
    /// The zero polynomial of `R_n`.
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "ring modulus must be positive");
        RingPoly { n, coeffs: BitVec::new(n) }
    }

    /// The multiplicative identity.
    pub fn one(n: usize) -> Self {
        Self::monomial(n, 0)
    }

    /// `x^k`, with `k` reduced modulo `n`.
    pub fn monomial(n: usize, k: usize) -> Self {
        let mut p = Self::zero(n);
        p.coeffs.set(k % n, true);
        p
    }

    /// The all-ones polynomial `M_n(x) = 1 + x + ... + x^(n-1)`.
    ///
    /// Satisfies `M_n(x) * (x + 1) = x^n - 1 = 0` in `R_n`, and over
    /// `F2[x]` it is irreducible exactly when 2 is primitive modulo `n`.
    pub fn all_ones(n: usize) -> Self {
        let mut p = Self::zero(n);
        for k in 0..n {
            p.coeffs.set(k, true);
        }
        p
    }

    pub fn modulus(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, k: usize) -> bool {
        self.coeffs.get(k % self.n)
    }

    pub fn set_coeff(&mut self, k: usize, value: bool) {
        let n = self.n;
        self.coeffs.set(k % n, value);
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    /// Exponents with nonzero coefficient, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.ones()
    }

    pub fn weight(&self) -> usize {
        self.coeffs.count_ones()
    }

    /// Evaluation at `x = 1`, i.e. the parity of the coefficient count.
    pub fn eval_one(&self) -> bool {
        self.weight() % 2 == 1
    }

    /// Multiplication by `x^k`: a cyclic rotation of the coefficients.
    pub fn mul_monomial(&self, k: usize) -> Self {
        RingPoly { n: self.n, coeffs: self.coeffs.rotl(k % self.n) }
    }
}

impl std::ops::AddAssign<&RingPoly> for RingPoly {
    fn add_assign(&mut self, rhs: &RingPoly) {
        assert_eq!(self.n, rhs.n, "ring modulus mismatch");
        self.coeffs.xor_assign(&rhs.coeffs);
    }
}

impl std::ops::Add for &RingPoly {
    type Output = RingPoly;
    fn add(self, rhs: &RingPoly) -> RingPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl std::ops::Mul for &RingPoly {
    type Output = RingPoly;

    /// Shift-and-xor product: for every set coefficient of `self`, xor
    /// a rotated copy of `rhs` into the accumulator.
    fn mul(self, rhs: &RingPoly) -> RingPoly {
        assert_eq!(self.n, rhs.n, "ring modulus mismatch");
        let mut acc = RingPoly::zero(self.n);
        for k in self.support() {
            acc.coeffs.xor_assign(&rhs.coeffs.rotl(k));
        }
        acc
    }
}

impl std::fmt::Debug for RingPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0 (mod x^{} - 1)", self.n);
        }
        let terms: Vec<String> = self
            .support()
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            })
            .collect();
        write!(f, "{} (mod x^{} - 1)", terms.join(" + "), self.n)
    }
}

/// Polynomial over `F2[x]` with no modulus, just enough for Euclidean
/// division and gcds.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Gf2Poly {
    words: Vec<u64>,
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Gf2Poly { words: Vec::new() }
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut p = Self::zero();
        p.set_bit(k);
        p
    }

    /// `x^k + 1`; for `k = n` this is `x^n - 1` over F2.
    pub fn binomial(k: usize) -> Self {
        assert!(k >= 1, "binomial needs k >= 1");
        let mut p = Self::monomial(k);
        p.set_bit(0);
        p
    }

    /// `M_n(x) = 1 + x + ... + x^(n-1)` as a plain polynomial.
    pub fn all_ones(n: usize) -> Self {
        assert!(n >= 1);
        let mut p = Self::zero();
        for k in 0..n {
            p.set_bit(k);
        }
        p
    }

    /// Lift a ring element to its canonical representative of degree
    /// below `n`.
    pub fn lift(p: &RingPoly) -> Self {
        let mut out = Self::zero();
        for k in p.support() {
            out.set_bit(k);
        }
        out
    }

    fn set_bit(&mut self, k: usize) {
        let w = k / 64;
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        self.words[w] ^= 1u64 << (k % 64);
        self.trim();
    }

    /// Drop trailing zero words so equal polynomials compare equal.
    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Degree of the polynomial, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.words
            .iter()
            .rposition(|&w| w != 0)
            .map(|wi| wi * 64 + 63 - self.words[wi].leading_zeros() as usize)
    }

    /// `self ^= other * x^shift`.
    fn xor_shifted(&mut self, other: &Gf2Poly, shift: usize) {
        let (ws, bs) = (shift / 64, shift % 64);
        let need = other.words.len() + ws + 1;
        if self.words.len() < need {
            self.words.resize(need, 0);
        }
        for (i, &w) in other.words.iter().enumerate() {
            self.words[i + ws] ^= w << bs;
            if bs > 0 {
                self.words[i + ws + 1] ^= w >> (64 - bs);
            }
        }
        self.trim();
    }

    /// Remainder of `self` under division by `divisor`.
    pub fn rem(&self, divisor: &Gf2Poly) -> Self {
        let dd = divisor.degree().expect("division by zero polynomial");
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            r.xor_shifted(divisor, dr - dd);
        }
        r
    }

    pub fn divides(&self, other: &Gf2Poly) -> bool {
        other.rem(self).is_zero()
    }

    /// Euclidean gcd. Every nonzero polynomial over F2 is monic, so no
    /// normalization is needed.
    pub fn gcd(a: &Gf2Poly, b: &Gf2Poly) -> Self {
        assert!(!(a.is_zero() && b.is_zero()), "gcd(0, 0) is undefined");
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    /// Exhaustive trial division, practical for degrees up to ~30.
    ///
    /// A reducible polynomial of degree `d` has a factor of degree at
    /// most `d / 2`, so only those candidates are tried.
    pub fn is_irreducible(&self) -> bool {
        let d = match self.degree() {
            None | Some(0) => return false,
            Some(d) => d,
        };
        assert!(d <= 30, "trial division is only meant for small degrees");
        for mask in 2u64..1u64 << (d / 2 + 1) {
            let candidate = Gf2Poly { words: vec![mask] };
            if candidate.degree() == Some(0) {
                continue;
            }
            if candidate.divides(self) {
                return false;
            }
        }
        true
    }
}

/// Primality by trial division; plenty for node counts.
pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1u64 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

/// Multiplicative order of 2 modulo a prime `n > 2`.
fn order_of_two(n: usize) -> usize {
    let mut pow = 2u64 % n as u64;
    let mut ord = 1;
    while pow != 1 {
        pow = pow * 2 % n as u64;
        ord += 1;
    }
    ord
}

/// Whether 2 generates the multiplicative group modulo the prime `n`.
///
/// Equivalent to `M_n(x)` being irreducible over F2, which is the
/// condition the triple-failure construction needs.
pub fn is_two_primitive(n: usize) -> bool {
    assert!(is_prime(n), "is_two_primitive expects a prime, got {n}");
    if n == 2 {
        // 2 is not even a unit modulo 2.
        return false;
    }
    order_of_two(n) == n - 1
}

/// Inverse of `a` modulo the prime `n`, via Fermat's little theorem.
pub fn mod_inverse(a: usize, n: usize) -> usize {
    assert!(is_prime(n), "mod_inverse expects a prime modulus, got {n}");
    assert!(a % n != 0, "0 has no inverse modulo {n}");
    pow_mod(a as u64 % n as u64, n as u64 - 2, n as u64) as usize
}
