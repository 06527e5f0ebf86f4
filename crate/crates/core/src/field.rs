//! Table-driven arithmetic in GF(q) for small prime powers.
//!
//! Elements are encoded as integers `0..q`: the base-`p` digits of an
//! element are the coefficients of its polynomial representative modulo a
//! fixed monic irreducible polynomial of degree `k` (`q = p^k`).

use crate::error::{PlatError, Result};

/// Largest supported field order.
pub const MAX_ORDER: u32 = 256;

#[derive(Debug, Clone)]
pub struct Gf {
    q: u32,
    p: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

impl Gf {
    pub fn new(q: u32) -> Result<Gf> {
        if q < 2 || q > MAX_ORDER {
            return Err(PlatError::InvalidField(format!(
                "order {q} outside 2..={MAX_ORDER}"
            )));
        }
        let (p, k) = prime_power(q)
            .ok_or_else(|| PlatError::InvalidField(format!("{q} is not a prime power")))?;
        let qu = q as usize;

        let add_digits = |a: u32, b: u32| -> u32 {
            let (mut a, mut b, mut out, mut scale) = (a, b, 0, 1);
            for _ in 0..k {
                out += ((a % p + b % p) % p) * scale;
                a /= p;
                b /= p;
                scale *= p;
            }
            out
        };
        let mut add = vec![0; qu * qu];
        for a in 0..q {
            for b in 0..q {
                add[(a * q + b) as usize] = add_digits(a, b);
            }
        }

        let mul = if k == 1 {
            (0..q)
                .flat_map(|a| (0..q).map(move |b| a * b % p))
                .collect::<Vec<_>>()
        } else {
            (0..q)
                .find_map(|low| {
                    // modulus x^k + (low as polynomial)
                    let table = poly_mul_table(p, k, low);
                    is_field(q, &table).then_some(table)
                })
                .ok_or_else(|| PlatError::InvalidField(format!("no irreducible of degree {k}")))?
        };

        let mut neg = vec![0; qu];
        let mut inv = vec![0; qu];
        for a in 0..q {
            for b in 0..q {
                if add[(a * q + b) as usize] == 0 {
                    neg[a as usize] = b;
                }
                if mul[(a * q + b) as usize] == 1 {
                    inv[a as usize] = b;
                }
            }
        }
        Ok(Gf {
            q,
            p,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `inv(0)` is 0 by convention.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn is_square(&self, a: u32) -> bool {
        (0..self.q).any(|x| self.mul(x, x) == a)
    }

    /// Projective representatives of `dim`-dimensional space, each scaled
    /// so its first nonzero coordinate is 1. The coordinate-axis points
    /// come first in axis order; the rest follow by leading position and
    /// then lexicographically. For `dim = 2` this is
    /// `[1:0], [0:1], [1:1], .., [1:q-1]`.
    pub fn projective_points(&self, dim: usize) -> Vec<Vec<u32>> {
        let q = self.q as usize;
        let mut out = Vec::new();
        for lead in 0..dim {
            let tail = dim - lead - 1;
            for code in 0..q.pow(tail as u32) {
                let mut v = vec![0; dim];
                v[lead] = 1;
                let mut c = code;
                for slot in v.iter_mut().skip(lead + 1).rev() {
                    *slot = (c % q) as u32;
                    c /= q;
                }
                out.push(v);
            }
        }
        out.sort_by_key(|v| {
            let weight = v.iter().filter(|&&x| x != 0).count();
            let lead = v.iter().position(|&x| x != 0).unwrap_or(0);
            (weight > 1, lead, v.clone())
        });
        out
    }

    /// Scale `v` so that its first nonzero coordinate is 1.
    pub fn normalize(&self, v: &mut [u32]) -> bool {
        let Some(&lead) = v.iter().find(|&&x| x != 0) else {
            return false;
        };
        let s = self.inv(lead);
        for x in v.iter_mut() {
            *x = self.mul(*x, s);
        }
        true
    }
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut rest, mut k) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

fn digits(mut a: u32, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = a % p;
            a /= p;
            d
        })
        .collect()
}

/// Multiplication table of GF(p)[x] / (x^k + low(x)); not necessarily a field.
fn poly_mul_table(p: u32, k: u32, low: u32) -> Vec<u32> {
    let q = p.pow(k);
    let modulus = digits(low, p, k);
    let ku = k as usize;
    let mut table = vec![0; (q * q) as usize];
    for a in 0..q {
        let da = digits(a, p, k);
        for b in 0..q {
            let db = digits(b, p, k);
            let mut prod = vec![0u32; 2 * ku];
            for i in 0..ku {
                for j in 0..ku {
                    prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
                }
            }
            // x^k = -low(x)
            for deg in (ku..2 * ku).rev() {
                let c = prod[deg];
                if c == 0 {
                    continue;
                }
                prod[deg] = 0;
                for (i, &m) in modulus.iter().enumerate() {
                    let sub = c * m % p;
                    prod[deg - ku + i] = (prod[deg - ku + i] + p - sub) % p;
                }
            }
            let mut out = 0;
            for i in (0..ku).rev() {
                out = out * p + prod[i];
            }
            table[(a * q + b) as usize] = out;
        }
    }
    table
}

fn is_field(q: u32, table: &[u32]) -> bool {
    (1..q).all(|a| (1..q).any(|b| table[(a * q + b) as usize] == 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_axioms(f: &Gf) {
        let q = f.order();
        for a in 0..q {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
            for b in 0..q {
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in 0..q {
                    assert_eq!(
                        f.mul(a, f.add(b, c)),
                        f.add(f.mul(a, b), f.mul(a, c))
                    );
                    assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                }
            }
        }
    }

    #[test]
    fn prime_and_extension_fields_satisfy_field_axioms() {
        for q in [2, 3, 4, 5, 7, 8, 9, 25, 27] {
            check_axioms(&Gf::new(q).unwrap());
        }
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert!(Gf::new(6).is_err());
        assert!(Gf::new(1).is_err());
        assert!(Gf::new(12).is_err());
    }

    #[test]
    fn squares_mod_three_and_five() {
        let f3 = Gf::new(3).unwrap();
        assert!(f3.is_square(1));
        assert!(!f3.is_square(2));
        let f5 = Gf::new(5).unwrap();
        assert!(f5.is_square(4));
        assert!(!f5.is_square(2));
        assert!(!f5.is_square(3));
    }

    #[test]
    fn projective_line_order() {
        let f = Gf::new(3).unwrap();
        let pts = f.projective_points(2);
        assert_eq!(pts, vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 2]]);
        assert_eq!(Gf::new(5).unwrap().projective_points(2).len(), 6);
        assert_eq!(f.projective_points(4).len(), 40);
    }
}
