//! Built-in algebras and the two non-nilpotent counterexample groups.
//!
//! Sign conventions of the nilpotent built-ins are fixed: the second-kind
//! bases of the worked examples depend on them.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactalg::{int, Derivation, Polynomial, Ring};
use crate::liecore::{FreeNilpotent, LieAlgebra};

/// `[X1,X2] = X3`.
pub fn heisenberg() -> LieAlgebra {
    LieAlgebra::from_brackets(
        "heisenberg",
        LieAlgebra::default_names(3),
        &[(0, 1, 2, int(1))],
        Some(vec![1, 1, 2]),
    )
    .expect("heisenberg constants")
}

/// `[X1,X2] = X3`, `[X1,X3] = X4`.
pub fn engel() -> LieAlgebra {
    LieAlgebra::from_brackets(
        "engel",
        LieAlgebra::default_names(4),
        &[(0, 1, 2, int(1)), (0, 2, 3, int(1))],
        Some(vec![1, 1, 2, 3]),
    )
    .expect("engel constants")
}

/// Free step-3 rank-2 algebra: `[X2,X1] = X3`, `[X3,X1] = X4`, `[X3,X2] = X5`.
pub fn f23() -> LieAlgebra {
    LieAlgebra::from_brackets(
        "f23",
        LieAlgebra::default_names(5),
        &[(1, 0, 2, int(1)), (2, 0, 3, int(1)), (2, 1, 4, int(1))],
        Some(vec![1, 1, 2, 3, 3]),
    )
    .expect("f23 constants")
}

/// `f23` generated from the Hall basis, whose order already coincides with
/// the literal basis above.
pub fn f23_from_hall() -> Result<LieAlgebra> {
    Ok(FreeNilpotent::new(2, 3)?.algebra.with_name("f23"))
}

pub const NILPOTENT: [&str; 3] = ["heisenberg", "engel", "f23"];

/// Built-in names with a one-line description, for listings.
pub fn catalogue() -> Vec<(&'static str, &'static str)> {
    vec![
        ("heisenberg", "Heisenberg algebra, [X1,X2]=X3, weights 1,1,2"),
        ("engel", "Engel algebra, [X1,X2]=X3, [X1,X3]=X4, weights 1,1,2,3"),
        ("f23", "free step-3 rank-2 algebra, [X2,X1]=X3, [X3,X1]=X4, [X3,X2]=X5"),
        ("abelianN", "abelian algebra of dimension N, e.g. abelian2"),
        ("freeM_S", "Hall-basis free nilpotent algebra, e.g. free3_2"),
        ("aff_plus", "orientation-preserving affine group (counterexample only)"),
        ("sl2r", "SL(2,R) near the identity (counterexample only)"),
    ]
}

/// Looks up a nilpotent built-in by name.
pub fn by_name(name: &str) -> Result<LieAlgebra> {
    match name {
        "heisenberg" => Ok(heisenberg()),
        "engel" => Ok(engel()),
        "f23" => Ok(f23()),
        _ => {
            if let Some(rest) = name.strip_prefix("abelian") {
                let n: usize = rest.parse().map_err(|_| Error::Unknown(name.into()))?;
                if n == 0 {
                    return Err(Error::Unknown(name.into()));
                }
                return Ok(LieAlgebra::abelian(n));
            }
            if let Some(rest) = name.strip_prefix("free") {
                let (m, s) = rest.split_once('_').ok_or_else(|| Error::Unknown(name.into()))?;
                let m: usize = m.parse().map_err(|_| Error::Unknown(name.into()))?;
                let s: usize = s.parse().map_err(|_| Error::Unknown(name.into()))?;
                return Ok(FreeNilpotent::new(m, s)?.algebra.with_name(name));
            }
            if name == "aff_plus" || name == "sl2r" {
                return Err(Error::Input(format!(
                    "`{name}` is not nilpotent; it is only available to `verify counterexamples`"
                )));
            }
            Err(Error::Unknown(name.into()))
        }
    }
}

/// Affine group of the line in coordinates `(x, y)`, `y > 0`, with the
/// transcendental generator `L = log y`.
pub struct AffPlus {
    pub ring: Arc<Ring>,
    pub x_field: Derivation,
    pub y_field: Derivation,
    pub f: Polynomial,
}

pub fn aff_plus() -> AffPlus {
    let ring = Ring::builder()
        .var("x")
        .laurent("y")
        .generator("L")
        .derivative("L", "x", "0")
        .derivative("L", "y", "y^-1")
        .build()
        .expect("aff_plus ring");
    AffPlus {
        x_field: Derivation::from_strs(&ring, &[("x", "y")]).expect("X"),
        y_field: Derivation::from_strs(&ring, &[("y", "y")]).expect("Y"),
        f: Polynomial::parse(&ring, "(x+1)*L").expect("f"),
        ring,
    }
}

/// `SL(2,R)` near the identity in the coordinates `(x1, x2, x3)` of the
/// matrix `[[x1, x2], [x3, (1 + x2 x3)/x1]]`.
pub struct Sl2r {
    pub ring: Arc<Ring>,
    pub fields: [Derivation; 3],
}

pub fn sl2r() -> Sl2r {
    let ring = Ring::builder()
        .laurent("x1")
        .var("x2")
        .var("x3")
        .build()
        .expect("sl2r ring");
    let fields = [
        Derivation::from_strs(&ring, &[("x1", "x1"), ("x2", "-x2"), ("x3", "x3")]).expect("X1"),
        Derivation::from_strs(&ring, &[("x2", "x1")]).expect("X2"),
        Derivation::from_strs(&ring, &[("x1", "x2"), ("x3", "(1 + x2*x3)/x1")]).expect("X3"),
    ];
    Sl2r { ring, fields }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nilpotent_builtins_validate() {
        assert_eq!(heisenberg().validate().unwrap().lcs.dims(), vec![3, 1, 0]);
        assert_eq!(engel().validate().unwrap().lcs.dims(), vec![4, 2, 1, 0]);
        assert_eq!(f23().validate().unwrap().step, 3);
        for a in [heisenberg(), engel(), f23()] {
            assert!(a.is_stratified(), "{}", a.name());
        }
    }

    #[test]
    fn hall_f23_equals_literal() {
        assert_eq!(f23_from_hall().unwrap().constants(), f23().constants());
    }

    #[test]
    fn lookup() {
        assert_eq!(by_name("abelian3").unwrap().dim(), 3);
        assert_eq!(by_name("free3_2").unwrap().dim(), 6);
        assert!(matches!(by_name("nope"), Err(Error::Unknown(_))));
        assert!(matches!(by_name("sl2r"), Err(Error::Input(_))));
    }

    #[test]
    fn sl2_bracket_relation() {
        let s = sl2r();
        let c = s.fields[1].commutator(&s.fields[2]).unwrap();
        assert_eq!(c, s.fields[0]);
    }
}
