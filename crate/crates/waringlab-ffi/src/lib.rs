//! C ABI for the waringlab library. Every entry point returns a `WlStatus`
//! code and writes results through out-pointers; the field context is an
//! opaque handle created by `wl_field_ctx_new` and released by
//! `wl_field_ctx_free`. Null out-pointers are reported, never dereferenced.

use std::os::raw::c_char;

use waringlab::curves::{count_dickson_curve, count_fermat_norm_curve};
use waringlab::dickson::dickson_eval;
use waringlab::energy::{energy_additive_fp2, energy_kloosterman, trace_energy_fp2};
use waringlab::expsums::{
    gauss_spectrum, kloosterman_spectrum, CharTable, Mode, SpectrumOptions,
};
use waringlab::field::{is_prime, Fp2};
use waringlab::waring::{waring_dickson, waring_norm_one};
use waringlab::{Error, FieldCtx};

/// Status codes for every FFI entry point. Values other than `Ok` and
/// `NoCoverage` indicate that no result was written.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WlStatus {
    Ok = 0,
    /// The Waring iteration stabilized short of full coverage: g is infinite.
    NoCoverage = 1,
    NotPrime = 2,
    InvalidParameter = 3,
    InvalidOrder = 4,
    /// The computation was refused at the requested scale.
    Refused = 5,
    NullPointer = 6,
    Overflow = 7,
}

/// Opaque handle to a prime-field context (the prime, a generator, and the
/// quadratic extension data).
pub struct WlFieldCtx {
    inner: FieldCtx,
}

fn status_of(err: &Error) -> WlStatus {
    match err {
        Error::NotPrime(_) => WlStatus::NotPrime,
        Error::InvalidOrder { .. } => WlStatus::InvalidOrder,
        Error::RefuseExhaustive(_) | Error::RefuseQuadratic(_) => WlStatus::Refused,
        _ => WlStatus::InvalidParameter,
    }
}

/// Writes `value` through `out`, guarding against null.
unsafe fn write_out<T>(out: *mut T, value: T) -> WlStatus {
    if out.is_null() {
        return WlStatus::NullPointer;
    }
    unsafe { out.write(value) };
    WlStatus::Ok
}

/// Human-readable message for a status code, as a static NUL-terminated
/// string; never null.
#[no_mangle]
pub extern "C" fn wl_status_message(status: WlStatus) -> *const c_char {
    let msg: &'static [u8] = match status {
        WlStatus::Ok => b"ok\0",
        WlStatus::NoCoverage => b"no coverage: the Waring number is infinite\0",
        WlStatus::NotPrime => b"p must be prime\0",
        WlStatus::InvalidParameter => b"invalid parameter\0",
        WlStatus::InvalidOrder => b"order does not divide the ambient group order\0",
        WlStatus::Refused => b"computation refused at this scale\0",
        WlStatus::NullPointer => b"null pointer argument\0",
        WlStatus::Overflow => b"result does not fit in 64 bits\0",
    };
    msg.as_ptr().cast()
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn wl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Allocates a field context for the odd prime `p` (p < 2^31) and stores the
/// handle in `out_ctx`. Free with `wl_field_ctx_free`.
#[no_mangle]
pub unsafe extern "C" fn wl_field_ctx_new(p: u64, out_ctx: *mut *mut WlFieldCtx) -> WlStatus {
    if out_ctx.is_null() {
        return WlStatus::NullPointer;
    }
    match FieldCtx::new(p) {
        Ok(inner) => {
            let handle = Box::into_raw(Box::new(WlFieldCtx { inner }));
            unsafe { write_out(out_ctx, handle) }
        }
        Err(e) => status_of(&e),
    }
}

/// Releases a context handle; a null handle is a no-op.
#[no_mangle]
pub unsafe extern "C" fn wl_field_ctx_free(ctx: *mut WlFieldCtx) {
    if !ctx.is_null() {
        drop(unsafe { Box::from_raw(ctx) });
    }
}

/// The prime behind a context handle.
#[no_mangle]
pub unsafe extern "C" fn wl_field_ctx_prime(ctx: *const WlFieldCtx, out_p: *mut u64) -> WlStatus {
    if ctx.is_null() {
        return WlStatus::NullPointer;
    }
    unsafe { write_out(out_p, (*ctx).inner.p) }
}

/// Evaluates the degree-e Dickson polynomial at x with parameter a, mod p.
#[no_mangle]
pub unsafe extern "C" fn wl_dickson_eval(
    p: u64,
    e: u64,
    a: u64,
    x: u64,
    out_value: *mut u64,
) -> WlStatus {
    if !is_prime(p) {
        return WlStatus::NotPrime;
    }
    unsafe { write_out(out_value, dickson_eval(p, e, a % p, x % p)) }
}

/// The Waring number g_a(e, p) of the Dickson value set over the prime
/// field. Returns `NoCoverage` (writing nothing) when g is infinite.
#[no_mangle]
pub unsafe extern "C" fn wl_waring_dickson(
    p: u64,
    e: u64,
    a: u64,
    out_g: *mut u64,
) -> WlStatus {
    match waring_dickson(p, e, a, None) {
        Ok(prof) => match prof.g() {
            Some(g) => unsafe { write_out(out_g, u64::from(g)) },
            None => WlStatus::NoCoverage,
        },
        Err(e) => status_of(&e),
    }
}

/// The Waring number G(k, p) for k-th powers of norm-one elements over the
/// quadratic extension. Returns `NoCoverage` when g is infinite.
#[no_mangle]
pub unsafe extern "C" fn wl_waring_norm_one(
    ctx: *const WlFieldCtx,
    k: u64,
    out_g: *mut u64,
) -> WlStatus {
    if ctx.is_null() {
        return WlStatus::NullPointer;
    }
    match waring_norm_one(unsafe { &(*ctx).inner }, k, None) {
        Ok(prof) => match prof.g() {
            Some(g) => unsafe { write_out(out_g, u64::from(g)) },
            None => WlStatus::NoCoverage,
        },
        Err(e) => status_of(&e),
    }
}

/// Exhaustive maximum modulus of incomplete Kloosterman sums over the
/// order-tau subgroup of the multiplicative group, with the attaining
/// character pair. Refused for large p; sample instead via the CLI.
#[no_mangle]
pub unsafe extern "C" fn wl_kloosterman_max(
    ctx: *const WlFieldCtx,
    tau: u64,
    out_max: *mut f64,
    out_alpha: *mut u64,
    out_beta: *mut u64,
) -> WlStatus {
    if ctx.is_null() {
        return WlStatus::NullPointer;
    }
    let fctx = unsafe { &(*ctx).inner };
    let table = CharTable::new(fctx.p);
    let h = match fctx.subgroup_fp(tau) {
        Ok(h) => h,
        Err(e) => return status_of(&e),
    };
    match kloosterman_spectrum(&h, &table, Mode::Exhaustive, SpectrumOptions::kloosterman_default())
    {
        Ok(s) => {
            if out_alpha.is_null() || out_beta.is_null() {
                return WlStatus::NullPointer;
            }
            unsafe {
                out_alpha.write(s.argmax[0]);
                out_beta.write(s.argmax[1]);
                write_out(out_max, s.max_modulus)
            }
        }
        Err(e) => status_of(&e),
    }
}

/// Exhaustive maximum modulus of Gauss sums over the order-tau norm-one
/// subgroup, with the canonical index of the attaining character.
#[no_mangle]
pub unsafe extern "C" fn wl_gauss_max(
    ctx: *const WlFieldCtx,
    tau: u64,
    out_max: *mut f64,
    out_alpha_index: *mut u64,
) -> WlStatus {
    if ctx.is_null() {
        return WlStatus::NullPointer;
    }
    let fctx = unsafe { &(*ctx).inner };
    let table = CharTable::new(fctx.p);
    let h = match fctx.subgroup_norm_one(tau) {
        Ok(h) => h,
        Err(e) => return status_of(&e),
    };
    match gauss_spectrum(fctx, &h, &table, Mode::Exhaustive, SpectrumOptions::gauss_default()) {
        Ok(s) => {
            if out_alpha_index.is_null() {
                return WlStatus::NullPointer;
            }
            unsafe {
                out_alpha_index.write(s.argmax[0]);
                write_out(out_max, s.max_modulus)
            }
        }
        Err(e) => status_of(&e),
    }
}

fn write_count(count: u128, out: *mut u64) -> WlStatus {
    match u64::try_from(count) {
        Ok(v) => unsafe { write_out(out, v) },
        Err(_) => WlStatus::Overflow,
    }
}

/// Energy kinds accepted by `wl_energy`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WlEnergyKind {
    /// Quadruple count for u + u^{-1} sums over a subgroup of F_p^*.
    Kloosterman = 0,
    /// Additive energy of the order-tau norm-one subgroup in F_{p^2}.
    AdditiveNormOne = 1,
    /// Additive energy of the traces of the norm-one subgroup.
    TraceNormOne = 2,
}

/// Exact ordered-quadruple energy count for the order-tau subgroup.
#[no_mangle]
pub unsafe extern "C" fn wl_energy(
    ctx: *const WlFieldCtx,
    tau: u64,
    kind: WlEnergyKind,
    out_count: *mut u64,
) -> WlStatus {
    if ctx.is_null() {
        return WlStatus::NullPointer;
    }
    let fctx = unsafe { &(*ctx).inner };
    let report = match kind {
        WlEnergyKind::Kloosterman => fctx
            .subgroup_fp(tau)
            .and_then(|h| energy_kloosterman(&h, None)),
        WlEnergyKind::AdditiveNormOne => fctx
            .subgroup_norm_one(tau)
            .and_then(|h| energy_additive_fp2(&h, None)),
        WlEnergyKind::TraceNormOne => fctx
            .subgroup_norm_one(tau)
            .and_then(|h| trace_energy_fp2(&h, None)),
    };
    match report {
        Ok(r) => write_count(r.count, out_count),
        Err(e) => status_of(&e),
    }
}

/// Affine point count of the Dickson-derived plane curve with exponent e and
/// parameter A over F_p.
#[no_mangle]
pub unsafe extern "C" fn wl_curve_dickson_count(
    p: u64,
    e: u64,
    a_param: u64,
    out_count: *mut u64,
) -> WlStatus {
    match count_dickson_curve(p, e, a_param) {
        Ok(r) => write_count(r.affine_count, out_count),
        Err(err) => status_of(&err),
    }
}

/// Affine point count of x^t + y^t + a = 0 over F_{p^2} with t = k(p-1);
/// `a_index` is the canonical index a0 + a1*p of a nonzero element.
#[no_mangle]
pub unsafe extern "C" fn wl_curve_fermat_norm_count(
    ctx: *const WlFieldCtx,
    k: u64,
    a_index: u64,
    out_count: *mut u64,
) -> WlStatus {
    if ctx.is_null() {
        return WlStatus::NullPointer;
    }
    let fctx = unsafe { &(*ctx).inner };
    if a_index >= fctx.p * fctx.p {
        return WlStatus::InvalidParameter;
    }
    match count_fermat_norm_curve(fctx, k, Fp2::from_index(a_index, fctx.p)) {
        Ok(r) => write_count(r.affine_count, out_count),
        Err(err) => status_of(&err),
    }
}
