//! Dickson polynomials D_e(X, a): D_0 = 2, D_1 = X,
//! D_e = X D_{e-1} - a D_{e-2}, their value sets over F_p, and the two
//! value-set inclusions that feed the Waring solver.

use crate::error::{Error, Result};
use crate::field::{inv_mod, mul_mod, pow_mod, FieldCtx};
use crate::valueset::{Ambient, ValueSet};

/// D_e(x, a) mod p in O(log e) field operations: the two-term recurrence is
/// driven by powers of the matrix [[x, -a], [1, 0]] applied to the seed
/// (D_1, D_0) = (x, 2).
pub fn dickson_eval(p: u64, e: u64, a: u64, x: u64) -> u64 {
    debug_assert!(a < p && x < p);
    if e == 0 {
        return 2 % p;
    }
    // m = [[x, -a], [1, 0]]^(e-1)
    let neg_a = if a == 0 { 0 } else { p - a };
    let mut m = [1u64, 0, 0, 1];
    let mut base = [x, neg_a, 1, 0];
    let mut exp = e - 1;
    let mat_mul = |l: &[u64; 4], r: &[u64; 4]| -> [u64; 4] {
        [
            (mul_mod(l[0], r[0], p) + mul_mod(l[1], r[2], p)) % p,
            (mul_mod(l[0], r[1], p) + mul_mod(l[1], r[3], p)) % p,
            (mul_mod(l[2], r[0], p) + mul_mod(l[3], r[2], p)) % p,
            (mul_mod(l[2], r[1], p) + mul_mod(l[3], r[3], p)) % p,
        ]
    };
    while exp > 0 {
        if exp & 1 == 1 {
            m = mat_mul(&m, &base);
        }
        base = mat_mul(&base, &base);
        exp >>= 1;
    }
    // (D_e, D_{e-1})^T = m * (x, 2)^T
    (mul_mod(m[0], x, p) + mul_mod(m[1], 2 % p, p)) % p
}

/// Checks D_e(v + a v^{-1}, a) = v^e + a^e v^{-e} for nonzero v.
/// Always true; exposed as a randomized self-test of the evaluator.
pub fn check_identity(p: u64, e: u64, a: u64, v: u64) -> Result<bool> {
    let v_inv = inv_mod(v, p)?;
    let arg = (v + mul_mod(a, v_inv, p)) % p;
    let lhs = dickson_eval(p, e, a, arg);
    let rhs = (pow_mod(v, e, p) + mul_mod(pow_mod(a, e, p), pow_mod(v_inv, e, p), p)) % p;
    Ok(lhs == rhs)
}

/// Membership set of {D_e(u, a) : u in F_p}, by direct evaluation.
pub fn dickson_value_set(p: u64, e: u64, a: u64) -> Result<ValueSet> {
    if e == 0 {
        return Err(Error::InvalidParameter(
            "value sets require e >= 1 (D_0 is the constant 2)".into(),
        ));
    }
    let mut s = ValueSet::empty(Ambient::Fp(p));
    for u in 0..p {
        s.insert(dickson_eval(p, e, a, u));
    }
    Ok(s)
}

/// The set {b^e Tr(v^e) : v in N_{p^2}} over F_p for nonzero b; always a
/// subset of the value set of D_e(., b^2).
pub fn norm_one_trace_image(ctx: &FieldCtx, e: u64, b: u64) -> Result<ValueSet> {
    if b % ctx.p == 0 {
        return Err(Error::InvalidParameter("b must be nonzero".into()));
    }
    let p = ctx.p;
    let be = pow_mod(b % p, e, p);
    let mut s = ValueSet::empty(Ambient::Fp(p));
    let n1_gen = ctx.norm_one_generator();
    let mut v = crate::field::Fp2::ONE;
    for _ in 0..p + 1 {
        let ve = ctx.fp2_pow(v, e);
        s.insert(mul_mod(be, ctx.trace(ve), p));
        v = ctx.fp2_mul(v, n1_gen);
    }
    Ok(s)
}

/// Membership set over F_{p^2} of {u^k : u in N_{p^2}}. Evaluated literally
/// element by element; the cardinality comes out as (p+1)/gcd(k, p+1).
pub fn power_value_set(ctx: &FieldCtx, k: u64) -> Result<ValueSet> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be >= 1".into()));
    }
    let p = ctx.p;
    let mut s = ValueSet::empty(Ambient::Fp2(p));
    let n1_gen = ctx.norm_one_generator();
    let mut u = crate::field::Fp2::ONE;
    for _ in 0..p + 1 {
        s.insert(ctx.fp2_pow(u, k).index(p));
        u = ctx.fp2_mul(u, n1_gen);
    }
    Ok(s)
}
