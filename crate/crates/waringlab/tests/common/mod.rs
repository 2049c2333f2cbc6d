//! Independent reference implementations shared by the integration suites.
//! Everything here is deliberately naive: recurrences run literally, sumsets
//! grow through hash sets, counts come from full nested loops.

use std::collections::HashSet;

use waringlab::field::mul_mod;
use waringlab::valueset::Ambient;

/// Literal two-term Dickson recurrence, O(e).
pub fn dickson_naive(p: u64, e: u64, a: u64, x: u64) -> u64 {
    let mut prev = 2 % p;
    let mut cur = x % p;
    if e == 0 {
        return prev;
    }
    for _ in 1..e {
        let next = (mul_mod(x, cur, p) + p - mul_mod(a, prev, p)) % p;
        prev = cur;
        cur = next;
    }
    cur
}

/// Breadth-first sumset iteration over hash sets: returns the cardinality
/// profile and Some(g) when the ambient is covered within `cap` steps.
pub fn waring_oracle(ambient: Ambient, base: &[u64], cap: u64) -> (Option<u64>, Vec<u64>) {
    let full = ambient.size();
    let mut cur: HashSet<u64> = base.iter().copied().collect();
    let mut cards = vec![cur.len() as u64];
    if cur.len() as u64 == full {
        return (Some(1), cards);
    }
    for s in 2..=cap {
        let next: HashSet<u64> = cur
            .iter()
            .flat_map(|&x| base.iter().map(move |&y| ambient.add_indices(x, y)))
            .collect();
        let card = next.len() as u64;
        if card == full {
            cards.push(card);
            return (Some(s), cards);
        }
        if next == cur {
            return (None, cards);
        }
        cards.push(card);
        cur = next;
    }
    (None, cards)
}

/// Ordered additive-energy quadruple count by four literal loops over the
/// key values s(u) attached to the subgroup elements, modulo m.
pub fn energy_four_loop_mod(keys: &[u64], m: u64) -> u128 {
    let mut count = 0u128;
    for &a in keys {
        for &b in keys {
            let ab = (a + b) % m;
            for &c in keys {
                for &d in keys {
                    if ab == (c + d) % m {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

/// Ordered energy count for pairs of residues (F_{p^2} elements as (a, b)
/// coordinates), with componentwise addition mod p.
pub fn energy_four_loop_fp2(keys: &[(u64, u64)], p: u64) -> u128 {
    let mut count = 0u128;
    for &(a1, a2) in keys {
        for &(b1, b2) in keys {
            let s = ((a1 + b1) % p, (a2 + b2) % p);
            for &(c1, c2) in keys {
                for &(d1, d2) in keys {
                    if s == ((c1 + d1) % p, (c2 + d2) % p) {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}
