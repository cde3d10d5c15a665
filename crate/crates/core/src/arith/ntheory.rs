//! Elementary number theory on machine integers.

use num_integer::{Integer, Roots};

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Splits `n >= 1` as `c * m^2` with `c` squarefree. `squarefree_part(0)` is `(0, 1)`.
pub fn squarefree_part(n: u64) -> (u64, u64) {
    if n == 0 {
        return (0, 1);
    }
    let mut c = 1u64;
    let mut m = 1u64;
    for (p, e) in factorize(n) {
        if e % 2 == 1 {
            c *= p;
        }
        m *= p.pow(e / 2);
    }
    (c, m)
}

pub fn is_squarefree(n: u64) -> bool {
    n >= 1 && factorize(n).iter().all(|&(_, e)| e == 1)
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn mobius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Number of distinct prime factors.
pub fn omega(n: u64) -> usize {
    factorize(n).len()
}

/// `Some(r)` when `n = r^2`.
pub fn exact_sqrt(n: u64) -> Option<u64> {
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Conductor of Q(sqrt(c)) for squarefree `c`: the least `n` with sqrt(c) in Q(zeta_n).
pub fn quadratic_conductor(c: u64) -> u64 {
    match c {
        0 | 1 => 1,
        _ if c % 4 == 1 => c,
        _ => 4 * c,
    }
}

/// Units of Z/nZ in increasing order.
pub fn units_mod(n: u64) -> Vec<u64> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|&k| gcd(k, n) == 1).collect()
}

/// Jacobi symbol `(a / n)` for odd positive `n`.
pub fn jacobi(a: i64, n: u64) -> i32 {
    assert!(n % 2 == 1, "jacobi symbol needs an odd modulus");
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut result = 1;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Kronecker symbol `(d / k)` for `k >= 1`.
pub fn kronecker(d: i64, k: u64) -> i32 {
    assert!(k >= 1);
    let twos = k.trailing_zeros();
    let odd = k >> twos;
    let mut sign = 1;
    if twos > 0 {
        let two = if d % 2 == 0 {
            0
        } else if matches!(d.rem_euclid(8), 1 | 7) {
            1
        } else {
            -1
        };
        if twos % 2 == 1 {
            sign = two;
        } else if two == 0 {
            sign = 0;
        }
    }
    sign * jacobi(d, odd)
}

/// Quadratic character of Q(sqrt(c)) evaluated at the unit `k`: the sign with
/// `sigma_k(sqrt(c)) = chi(k) sqrt(c)`.
pub fn quadratic_character(c: u64, k: u64) -> i32 {
    if c <= 1 {
        return 1;
    }
    let disc = if c % 4 == 1 { c as i64 } else { 4 * c as i64 };
    kronecker(disc, k)
}
