use std::fmt;

/// Largest number of variables a ring may carry, auxiliary variables included.
pub const MAX_VARS: usize = 32;

/// Exponent vector stored densely; unused slots stay zero.
///
/// Exponents are bytes: multiplying past 255 in any variable panics.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
    deg: u16,
}

impl Default for Monomial {
    fn default() -> Self {
        Self::one()
    }
}

impl Monomial {
    pub const fn one() -> Self {
        Monomial { exps: [0; MAX_VARS], deg: 0 }
    }

    pub fn var(i: usize) -> Self {
        Self::var_pow(i, 1)
    }

    pub fn var_pow(i: usize, e: u8) -> Self {
        let mut m = Self::one();
        m.exps[i] = e;
        m.deg = e as u16;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Self::one();
        for (i, &e) in exps.iter().enumerate() {
            m.exps[i] = u8::try_from(e).expect("exponent exceeds 255");
            m.deg += e as u16;
        }
        m
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg as u32
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    #[inline]
    pub(crate) fn raw(&self) -> &[u8; MAX_VARS] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Sum of exponents over the index range.
    pub fn partial_degree(&self, range: std::ops::Range<usize>) -> u32 {
        self.exps[range].iter().map(|&e| e as u32).sum()
    }

    /// Bit `i` set iff variable `i` occurs.
    #[inline]
    pub fn support_mask(&self) -> u32 {
        let mut mask = 0u32;
        for (i, &e) in self.exps.iter().enumerate() {
            if e != 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u8; MAX_VARS];
        let mut overflow = false;
        for ((e, a), b) in exps.iter_mut().zip(&self.exps).zip(&other.exps) {
            let s = *a as u16 + *b as u16;
            overflow |= s > 255;
            *e = s as u8;
        }
        assert!(!overflow, "exponent overflow in monomial product");
        Monomial { exps, deg: self.deg + other.deg }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        if self.deg > other.deg {
            return false;
        }
        self.exps.iter().zip(&other.exps).fold(true, |ok, (a, b)| ok & (a <= b))
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    #[inline]
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let mut exps = [0u8; MAX_VARS];
        for ((e, a), b) in exps.iter_mut().zip(&self.exps).zip(&other.exps) {
            *e = a - b;
        }
        Some(Monomial { exps, deg: self.deg - other.deg })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u8; MAX_VARS];
        let mut deg = 0u16;
        for ((e, a), b) in exps.iter_mut().zip(&self.exps).zip(&other.exps) {
            *e = *a.max(b);
            deg += *e as u16;
        }
        Monomial { exps, deg }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u8; MAX_VARS];
        let mut deg = 0u16;
        for ((e, a), b) in exps.iter_mut().zip(&self.exps).zip(&other.exps) {
            *e = *a.min(b);
            deg += *e as u16;
        }
        Monomial { exps, deg }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    /// Copy with variable `i` set to exponent `e`.
    pub fn with_exp(&self, i: usize, e: u8) -> Monomial {
        let mut m = *self;
        m.deg = m.deg - m.exps[i] as u16 + e as u16;
        m.exps[i] = e;
        m
    }

    /// Moves exponent of variable `i` to slot `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Monomial {
        let mut m = Monomial::one();
        for (i, &j) in perm.iter().enumerate() {
            m.exps[j] = self.exps[i];
        }
        m.deg = self.deg;
        m
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e != 0).map_or(0, |p| p + 1);
        write!(f, "m{:?}", &self.exps[..last])
    }
}
