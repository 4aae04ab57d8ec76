//! Constructors for the shipped families.
//!
//! Index conventions: braid-type generators `B[i,j]` with `i < j` live in
//! layer `j - 2` (so `B[1,2]` is the outermost layer). Orbit labels are
//! stored additively: `p ∈ 1..=r` for the monomial family (with `p ≡ p + r`),
//! `σ ∈ 0..m` for the surface family.

use super::{AlgebraSpec, Family, SpecBuilder};
use crate::error::{invalid, LieError, Result};
use crate::linear::Lin;

pub(crate) fn b(i: usize, j: usize) -> String {
    format!("B[{i},{j}]")
}

pub(crate) fn bl(i: usize, j: usize, p: i64) -> String {
    format!("B[{i},{j};{p}]")
}

pub(crate) fn z(j: usize) -> String {
    format!("Z[{j}]")
}

/// Representative of `p` in `1..=r`.
fn lab(p: i64, r: usize) -> i64 {
    (p - 1).rem_euclid(r as i64) + 1
}

/// Representative of `σ` in `0..m`.
fn slab(s: i64, m: usize) -> i64 {
    s.rem_euclid(m as i64)
}

fn braid_layers(builder: &mut SpecBuilder, n: usize) -> Result<()> {
    for j in 2..=n {
        builder.layer((1..j).map(|i| b(i, j)))?;
    }
    Ok(())
}

impl AlgebraSpec {
    /// Upper-triangular McCool algebra: `[B[i,j], B[j,l]] = [B[j,l], B[i,l]]`,
    /// `[B[i,j], B[i,l]] = 0`, disjoint pairs commute.
    pub fn mccool_plus(n: usize) -> Result<AlgebraSpec> {
        if n < 2 {
            return Err(invalid("mccool_plus needs n >= 2"));
        }
        let mut s = SpecBuilder::new(Family::McCoolPlus { n });
        braid_layers(&mut s, n)?;
        for l in 3..=n {
            for j in 2..l {
                for i in 1..j {
                    let v = s.br(&b(j, l), &b(i, l))?;
                    s.set_action(&b(i, j), &b(j, l), v)?;
                }
            }
        }
        s.build()
    }

    /// Infinitesimal pure braid algebra on `n` strands.
    pub fn drinfeld_kohno(n: usize) -> Result<AlgebraSpec> {
        if n < 2 {
            return Err(invalid("drinfeld_kohno needs n >= 2"));
        }
        let mut s = SpecBuilder::new(Family::DrinfeldKohno { n });
        braid_layers(&mut s, n)?;
        for l in 3..=n {
            for j in 2..l {
                for i in 1..j {
                    let v = s.br(&b(j, l), &b(i, l))?;
                    s.set_action(&b(i, j), &b(j, l), v)?;
                    let v = s.br(&b(i, l), &b(j, l))?;
                    s.set_action(&b(i, j), &b(i, l), v)?;
                }
            }
        }
        s.build()
    }

    /// Orbit-configuration algebra of the monomial arrangement: layer `j - 1`
    /// is `Z[j], B[1,j;1..r], …, B[j-1,j;1..r]`.
    pub fn monomial_orbit(r: usize, n: usize) -> Result<AlgebraSpec> {
        if r < 1 || n < 1 {
            return Err(invalid("monomial_orbit needs r >= 1 and n >= 1"));
        }
        let ri = r as i64;
        let mut s = SpecBuilder::new(Family::MonomialOrbit { r, n });
        for j in 1..=n {
            let mut names = vec![z(j)];
            for i in 1..j {
                names.extend((1..=ri).map(|p| bl(i, j, p)));
            }
            s.layer(names)?;
        }
        for l in 2..=n {
            for j in 1..l {
                // Z[j] on Z[l]
                let mut v = Lin::zero();
                for p in 1..=ri {
                    v.add_assign(&s.br(&z(l), &bl(j, l, p))?);
                }
                s.set_action(&z(j), &z(l), v)?;
                // Z[j] on B[j,l;p]
                for p in 1..=ri {
                    let mut v = s.br(&z(l), &bl(j, l, p))?.neg();
                    for q in 1..=ri {
                        v.sub_assign(&s.br(&bl(j, l, q), &bl(j, l, p))?);
                    }
                    s.set_action(&z(j), &bl(j, l, p), v)?;
                }
                // B[i,j;p] on B[i,l;q] and on B[j,l;m]
                for i in 1..j {
                    for p in 1..=ri {
                        for q in 1..=ri {
                            let v = s.br(&bl(j, l, lab(q - p, r)), &bl(i, l, q))?.neg();
                            s.set_action(&bl(i, j, p), &bl(i, l, q), v)?;
                            let v = s.br(&bl(i, l, lab(p + q, r)), &bl(j, l, q))?.neg();
                            s.set_action(&bl(i, j, p), &bl(j, l, q), v)?;
                        }
                    }
                }
            }
        }
        s.build()
    }

    /// Orbit-configuration algebra for a cyclic label group `Z/m`; layer
    /// `j - 2` is `B[1,j;0..m], …, B[j-1,j;0..m]`. With `m = 1` this is the
    /// infinitesimal braid algebra.
    pub fn surface_orbit(m: usize, n: usize) -> Result<AlgebraSpec> {
        if m < 1 || n < 2 {
            return Err(invalid("surface_orbit needs m >= 1 and n >= 2"));
        }
        let mi = m as i64;
        let mut s = SpecBuilder::new(Family::SurfaceOrbit { m, n });
        for j in 2..=n {
            let mut names = Vec::new();
            for i in 1..j {
                names.extend((0..mi).map(|t| bl(i, j, t)));
            }
            s.layer(names)?;
        }
        for j in 3..=n {
            for sx in 2..j {
                for i in 1..sx {
                    for sigma in 0..mi {
                        for tau in 0..mi {
                            let v = s.br(&bl(i, j, tau), &bl(sx, j, slab(tau - sigma, m)))?;
                            s.set_action(&bl(i, sx, sigma), &bl(i, j, tau), v)?;
                            let v = s.br(&bl(sx, j, tau), &bl(i, j, slab(tau + sigma, m)))?;
                            s.set_action(&bl(i, sx, sigma), &bl(sx, j, tau), v)?;
                        }
                    }
                }
            }
        }
        s.build()
    }

    /// `L[a3] ⋊ L[phi1, phi2]` with trivial action.
    pub fn poison_model() -> Result<AlgebraSpec> {
        let mut s = SpecBuilder::new(Family::Poison);
        s.layer(["phi1", "phi2"])?;
        s.layer(["a3"])?;
        s.build()
    }

    /// Free Lie algebra on `x1, …, xk`.
    pub fn free(k: usize) -> Result<AlgebraSpec> {
        if k < 1 {
            return Err(invalid("free needs k >= 1"));
        }
        Self::free_named((1..=k).map(|i| format!("x{i}")).collect())
    }

    /// Free Lie algebra on the given names.
    pub fn free_named(names: Vec<String>) -> Result<AlgebraSpec> {
        let k = names.len();
        let mut s = SpecBuilder::new(Family::Free { k });
        s.layer(names)?;
        s.build()
    }

    /// Abelian Lie algebra on `e1, …, ek` (one rank-1 layer each).
    pub fn abelian(k: usize) -> Result<AlgebraSpec> {
        if k < 1 {
            return Err(invalid("abelian needs k >= 1"));
        }
        let mut s = SpecBuilder::new(Family::Abelian { k });
        for i in 1..=k {
            s.layer([format!("e{i}")])?;
        }
        s.build()
    }

    /// Direct product: layers of `a` followed by layers of `b`, no cross action.
    pub fn product(a: &AlgebraSpec, b: &AlgebraSpec) -> Result<AlgebraSpec> {
        let mut s = SpecBuilder::new(Family::Product(Box::new(a.family.clone()), Box::new(b.family.clone())));
        for part in [a, b] {
            for l in &part.layers {
                s.layer(l.generators.iter().cloned())?;
            }
        }
        for part in [a, b] {
            for (g, t, v) in part.action_entries() {
                s.set_action(part.gen_name(g), part.gen_name(t), v.clone())?;
            }
        }
        s.build()
    }

    /// Build a family from its CLI-style name and parameters.
    pub fn by_name(name: &str, n: Option<usize>, r: Option<usize>, labels: Option<usize>) -> Result<AlgebraSpec> {
        let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| invalid(format!("{name} needs --{flag}")));
        match name {
            "mccool" | "mccool_plus" => Self::mccool_plus(need(n, "n")?),
            "dk" | "drinfeld_kohno" => Self::drinfeld_kohno(need(n, "n")?),
            "monomial" | "monomial_orbit" => Self::monomial_orbit(need(r, "r")?, need(n, "n")?),
            "surface" | "surface_orbit" => Self::surface_orbit(need(labels.or(r), "labels")?, need(n, "n")?),
            "poison" | "poison_model" => Self::poison_model(),
            "free" => Self::free(need(n, "n")?),
            other => Err(LieError::InvalidParameter(format!("unknown family `{other}`"))),
        }
    }
}

/// `Σ_{j=2}^{n} B[1,j]` in `mccool_plus(n)` or `drinfeld_kohno(n)`.
pub fn mccool_central_names(n: usize) -> Vec<String> {
    (2..=n).map(|j| b(1, j)).collect()
}

/// Names of all `B[r,s]`, `r < s <= n`.
pub fn braid_names(n: usize) -> Vec<String> {
    let mut out = Vec::new();
    for s in 2..=n {
        for r in 1..s {
            out.push(b(r, s));
        }
    }
    out
}

/// Names summed in `Δ(r,n) = Σ Z[k] + Σ B[i,j;p]`, i.e. every generator of
/// `monomial_orbit(r,n)`.
pub fn monomial_delta_names(r: usize, n: usize) -> Vec<String> {
    let mut out = Vec::new();
    for j in 1..=n {
        out.push(z(j));
        for i in 1..j {
            out.extend((1..=r as i64).map(|p| bl(i, j, p)));
        }
    }
    out
}
