//! Exact arithmetic in F_p and F_{p^2} = F_p[theta]/(theta^2 - d), and
//! enumeration of the multiplicative subgroups every other module works on.
//!
//! Primes are machine-word sized; all products go through 128-bit
//! intermediates, so no modulus above 2^63 is ever needed here.

use crate::error::{Error, Result};

/// Product modulo `p` with a 128-bit intermediate.
#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// `x^n mod p` by square-and-multiply. `n = 0` returns 1, including for
/// `x = 0` (the empty-product convention).
pub fn pow_mod(x: u64, n: u64, p: u64) -> u64 {
    debug_assert!(x < p);
    let mut base = x % p;
    let mut exp = n;
    let mut acc = 1 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of `x` modulo the prime `p`, via Fermat's little theorem.
pub fn inv_mod(x: u64, p: u64) -> Result<u64> {
    if x % p == 0 {
        return Err(Error::NonInvertible(p));
    }
    Ok(pow_mod(x % p, p - 2, p))
}

/// Deterministic Miller-Rabin, valid for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        r += 1;
    }
    // This base set is known to be exact for n < 2^64.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization by trial division; fine for n up to ~10^14, far past
/// the p +- 1 values this crate handles.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut push = |q: u64, n: &mut u64| {
        let mut k = 0;
        while *n % q == 0 {
            *n /= q;
            k += 1;
        }
        if k > 0 {
            out.push((q, k));
        }
    };
    push(2, &mut n);
    let mut q = 3;
    while q * q <= n {
        push(q, &mut n);
        q += 2;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Distinct prime divisors of `n`.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    factor(n).into_iter().map(|(q, _)| q).collect()
}

/// All divisors of `n`, sorted ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (q, k) in factor(n) {
        let base = ds.clone();
        let mut qe = 1u64;
        for _ in 0..k {
            qe *= q;
            ds.extend(base.iter().map(|d| d * qe));
        }
    }
    ds.sort_unstable();
    ds
}

/// True iff `x` has multiplicative order exactly `n` in a group where
/// `x^n = 1` is already known (checked via the prime divisors of `n`).
fn has_exact_order(x: u64, n: u64, p: u64) -> bool {
    if pow_mod(x, n, p) != 1 {
        return false;
    }
    prime_divisors(n).iter().all(|q| pow_mod(x, n / q, p) != 1)
}

/// Least primitive root modulo the prime `p`.
pub fn find_generator(p: u64) -> u64 {
    let qs = prime_divisors(p - 1);
    (2..p)
        .find(|&g| qs.iter().all(|q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("every prime has a primitive root")
}

/// Least quadratic non-residue modulo the odd prime `p`.
pub fn least_nonresidue(p: u64) -> u64 {
    (2..p)
        .find(|&d| pow_mod(d, (p - 1) / 2, p) == p - 1)
        .expect("an odd prime has a non-residue")
}

/// Euler's criterion: is `a` a nonzero quadratic residue mod `p`?
pub fn is_quadratic_residue(a: u64, p: u64) -> bool {
    a % p != 0 && pow_mod(a % p, (p - 1) / 2, p) == 1
}

/// Element a + b*theta of F_{p^2}, theta^2 = d.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp2 {
    pub a: u64,
    pub b: u64,
}

impl Fp2 {
    pub const ONE: Fp2 = Fp2 { a: 1, b: 0 };

    pub fn new(a: u64, b: u64) -> Fp2 {
        Fp2 { a, b }
    }

    /// Embed c in F_p.
    pub fn scalar(c: u64) -> Fp2 {
        Fp2 { a: c, b: 0 }
    }

    /// Canonical index a + b*p, used for ValueSet membership and serialization.
    pub fn index(&self, p: u64) -> u64 {
        self.a + self.b * p
    }

    pub fn from_index(idx: u64, p: u64) -> Fp2 {
        Fp2 { a: idx % p, b: idx / p }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }
}

/// A prime context: F_p with its least primitive root, plus the quadratic
/// extension F_{p^2} = F_p(theta), theta^2 = d for the least non-residue d.
#[derive(Debug, Clone)]
pub struct FieldCtx {
    pub p: u64,
    /// Least primitive root of F_p^*.
    pub g: u64,
    /// Least quadratic non-residue; theta^2 = d.
    pub d: u64,
    /// A generator of F_{p^2}^*, found by deterministic scan.
    pub ext_gen: Fp2,
}

impl FieldCtx {
    /// Build the full context for an odd prime `p`. Composite or even input
    /// is a hard error.
    pub fn new(p: u64) -> Result<FieldCtx> {
        if p < 3 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 1 << 31 {
            return Err(Error::InvalidParameter(format!(
                "p = {p} exceeds the supported range (p < 2^31)"
            )));
        }
        let g = find_generator(p);
        let d = least_nonresidue(p);
        let mut ctx = FieldCtx { p, g, d, ext_gen: Fp2::ONE };
        ctx.ext_gen = ctx.find_ext_generator();
        Ok(ctx)
    }

    fn find_ext_generator(&self) -> Fp2 {
        let n = self.p * self.p - 1;
        let qs = prime_divisors(n);
        // Scan in canonical index order starting at theta (index p); elements
        // with b = 0 lie in F_p and can never generate.
        for idx in self.p..self.p * self.p {
            let z = Fp2::from_index(idx, self.p);
            if qs.iter().all(|q| self.fp2_pow(z, n / q) != Fp2::ONE) {
                return z;
            }
        }
        unreachable!("F_{{p^2}}^* is cyclic");
    }

    pub fn add(&self, x: u64, y: u64) -> u64 {
        let s = x + y;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn neg(&self, x: u64) -> u64 {
        if x == 0 {
            0
        } else {
            self.p - x
        }
    }

    pub fn fp2_add(&self, x: Fp2, y: Fp2) -> Fp2 {
        Fp2 { a: self.add(x.a, y.a), b: self.add(x.b, y.b) }
    }

    pub fn fp2_neg(&self, x: Fp2) -> Fp2 {
        Fp2 { a: self.neg(x.a), b: self.neg(x.b) }
    }

    /// (a1 + b1 theta)(a2 + b2 theta) = (a1 a2 + d b1 b2) + (a1 b2 + a2 b1) theta.
    pub fn fp2_mul(&self, x: Fp2, y: Fp2) -> Fp2 {
        let p = self.p;
        let a = (mul_mod(x.a, y.a, p) + mul_mod(self.d, mul_mod(x.b, y.b, p), p)) % p;
        let b = (mul_mod(x.a, y.b, p) + mul_mod(x.b, y.a, p)) % p;
        Fp2 { a, b }
    }

    pub fn fp2_pow(&self, x: Fp2, n: u64) -> Fp2 {
        let mut base = x;
        let mut exp = n;
        let mut acc = Fp2::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.fp2_mul(acc, base);
            }
            base = self.fp2_mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn fp2_inv(&self, x: Fp2) -> Result<Fp2> {
        if x.is_zero() {
            return Err(Error::NonInvertible(self.p));
        }
        // z^{-1} = conj(z) / Nm(z) with conj(a + b theta) = a - b theta.
        let nm_inv = inv_mod(self.norm(x), self.p)?;
        Ok(Fp2 {
            a: mul_mod(x.a, nm_inv, self.p),
            b: mul_mod(self.neg(x.b), nm_inv, self.p),
        })
    }

    /// Tr(z) = z + z^p = 2a.
    pub fn trace(&self, z: Fp2) -> u64 {
        self.add(z.a, z.a)
    }

    /// Nm(z) = z^{p+1} = a^2 - d b^2.
    pub fn norm(&self, z: Fp2) -> u64 {
        let p = self.p;
        let aa = mul_mod(z.a, z.a, p);
        let dbb = mul_mod(self.d, mul_mod(z.b, z.b, p), p);
        (aa + p - dbb) % p
    }

    /// Frobenius z -> z^p; on the basis {1, theta} this is conjugation since
    /// theta^p = -theta.
    pub fn frobenius(&self, z: Fp2) -> Fp2 {
        Fp2 { a: z.a, b: self.neg(z.b) }
    }

    /// Generator of the norm-one subgroup N_{p^2} (order p + 1).
    pub fn norm_one_generator(&self) -> Fp2 {
        self.fp2_pow(self.ext_gen, self.p - 1)
    }

    /// The subgroup of F_p^* of order `tau`, elements listed in
    /// generator-power order.
    pub fn subgroup_fp(&self, tau: u64) -> Result<FpSubgroup> {
        let n = self.p - 1;
        if tau == 0 || n % tau != 0 {
            return Err(Error::InvalidOrder { tau, ambient_order: n });
        }
        let gen = pow_mod(self.g, n / tau, self.p);
        let mut elements = Vec::with_capacity(tau as usize);
        let mut x = 1u64;
        for _ in 0..tau {
            elements.push(x);
            x = mul_mod(x, gen, self.p);
        }
        debug_assert!(has_exact_order(gen, tau, self.p));
        Ok(FpSubgroup { p: self.p, tau, gen, elements })
    }

    /// The subgroup of N_{p^2} of order `tau`.
    pub fn subgroup_norm_one(&self, tau: u64) -> Result<NormOneSubgroup> {
        let n = self.p + 1;
        if tau == 0 || n % tau != 0 {
            return Err(Error::InvalidOrder { tau, ambient_order: n });
        }
        let gen = self.fp2_pow(self.norm_one_generator(), n / tau);
        let mut elements = Vec::with_capacity(tau as usize);
        let mut z = Fp2::ONE;
        for _ in 0..tau {
            elements.push(z);
            z = self.fp2_mul(z, gen);
        }
        Ok(NormOneSubgroup { p: self.p, tau, gen, elements })
    }
}

/// A multiplicative subgroup of F_p^* of order tau, materialized.
#[derive(Debug, Clone)]
pub struct FpSubgroup {
    pub p: u64,
    pub tau: u64,
    pub gen: u64,
    pub elements: Vec<u64>,
}

/// A multiplicative subgroup of the norm-one group N_{p^2}, materialized.
#[derive(Debug, Clone)]
pub struct NormOneSubgroup {
    pub p: u64,
    pub tau: u64,
    pub gen: Fp2,
    pub elements: Vec<Fp2>,
}
