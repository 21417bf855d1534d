//! Dual lattices M and N, tagged lattice/rational vectors, and the duality
//! pairing. The tags exist to keep weight-space (M) and one-parameter-group
//! (N) data from being mixed; the pairing is only defined across the two.

use serde::{Deserialize, Serialize};

use crate::arith::{check_rank, check_rank_rat, dot_int, dot_int_rat, dot_rat, Int, Rat};
use crate::error::{Error, Result};

/// Ambient space tag: the weight lattice M or its dual N.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Space {
    M,
    N,
}

impl Space {
    pub fn dual(self) -> Space {
        match self {
            Space::M => Space::N,
            Space::N => Space::M,
        }
    }
}

/// An integral vector in M or N.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector {
    pub space: Space,
    pub coords: Vec<Int>,
}

impl LatticeVector {
    pub fn new(space: Space, coords: Vec<Int>) -> Self {
        LatticeVector { space, coords }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn to_rational(&self) -> RationalVector {
        RationalVector {
            space: self.space,
            coords: self.coords.iter().map(|x| Rat::from_integer(x.clone())).collect(),
        }
    }
}

/// A rational vector in M_Q or N_Q.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalVector {
    pub space: Space,
    pub coords: Vec<Rat>,
}

impl RationalVector {
    pub fn new(space: Space, coords: Vec<Rat>) -> Self {
        RationalVector { space, coords }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }
}

fn check_dual_spaces(a: Space, b: Space) -> Result<()> {
    if a == b.dual() {
        Ok(())
    } else {
        Err(Error::SpaceMismatch)
    }
}

/// Duality pairing of two lattice vectors from opposite spaces.
pub fn pair(a: &LatticeVector, b: &LatticeVector) -> Result<Int> {
    check_dual_spaces(a.space, b.space)?;
    check_rank(a.rank(), &b.coords)?;
    Ok(dot_int(&a.coords, &b.coords))
}

/// Pairing of a lattice vector with a rational vector from the opposite space.
pub fn pair_rat(a: &LatticeVector, b: &RationalVector) -> Result<Rat> {
    check_dual_spaces(a.space, b.space)?;
    check_rank_rat(a.rank(), &b.coords)?;
    Ok(dot_int_rat(&a.coords, &b.coords))
}

/// Pairing of two rational vectors from opposite spaces.
pub fn pair_rat_rat(a: &RationalVector, b: &RationalVector) -> Result<Rat> {
    check_dual_spaces(a.space, b.space)?;
    check_rank_rat(a.rank(), &b.coords)?;
    Ok(dot_rat(&a.coords, &b.coords))
}
