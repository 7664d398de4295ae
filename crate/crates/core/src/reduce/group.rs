//! The group of congruences `P` with `P·J_I·Pᵗ = J_I` and `P·J_N·Pᵗ = J_N`.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::family::canonical_skew_pair;
use crate::pencil::{ConstMatrix, Matrix};
use crate::ring::GaussianRational;

/// Upper-triangular Toeplitz 3×3 block `[[p1, p2, p3], [0, p1, p2], [0, 0, p1]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleBlock {
    pub p1: GaussianRational,
    pub p2: GaussianRational,
    pub p3: GaussianRational,
}

impl TriangleBlock {
    pub fn new(p1: GaussianRational, p2: GaussianRational, p3: GaussianRational) -> TriangleBlock {
        TriangleBlock { p1, p2, p3 }
    }

    pub fn scalar(p1: GaussianRational) -> TriangleBlock {
        TriangleBlock::new(p1, GaussianRational::zero(), GaussianRational::zero())
    }

    pub fn identity() -> TriangleBlock {
        TriangleBlock::scalar(GaussianRational::one())
    }

    pub fn zero() -> TriangleBlock {
        TriangleBlock::scalar(GaussianRational::zero())
    }

    pub fn is_invertible(&self) -> bool {
        !self.p1.is_zero()
    }

    pub fn matrix(&self) -> ConstMatrix {
        Matrix::from_fn(3, |i, j| match j as i64 - i as i64 {
            0 => self.p1.clone(),
            1 => self.p2.clone(),
            2 => self.p3.clone(),
            _ => GaussianRational::zero(),
        })
    }

    /// Reads a 3×3 matrix of triangle form, if it is one.
    pub fn from_matrix(m: &ConstMatrix) -> Option<TriangleBlock> {
        let block = TriangleBlock::new(m[(0, 0)].clone(), m[(0, 1)].clone(), m[(0, 2)].clone());
        (block.matrix() == *m).then_some(block)
    }

    /// Triangle blocks commute: they are polynomials in the nilpotent shift.
    pub fn mul(&self, o: &TriangleBlock) -> TriangleBlock {
        TriangleBlock::new(
            &self.p1 * &o.p1,
            &(&self.p1 * &o.p2) + &(&self.p2 * &o.p1),
            &(&(&self.p1 * &o.p3) + &(&self.p2 * &o.p2)) + &(&self.p3 * &o.p1),
        )
    }

    pub fn add(&self, o: &TriangleBlock) -> TriangleBlock {
        TriangleBlock::new(&self.p1 + &o.p1, &self.p2 + &o.p2, &self.p3 + &o.p3)
    }

    pub fn neg(&self) -> TriangleBlock {
        TriangleBlock::new(-&self.p1, -&self.p2, -&self.p3)
    }

    /// `1/p1 - (p2/p1²) E + (p2²/p1³ - p3/p1²) E²`.
    pub fn inverse(&self) -> Option<TriangleBlock> {
        let inv = self.p1.inv()?;
        let inv2 = &inv * &inv;
        let inv3 = &inv2 * &inv;
        Some(TriangleBlock::new(
            inv.clone(),
            -&(&self.p2 * &inv2),
            &(&self.p2.pow(2) * &inv3) - &(&self.p3 * &inv2),
        ))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `[[P1, P2], [P3, P1⁻¹ + P3·P1⁻¹·P2]]`.
    First,
    /// `[[P2, P1], [-P1⁻¹ + P3·P1⁻¹·P2, P3]]`.
    Second,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    pub p1: TriangleBlock,
    pub p2: TriangleBlock,
    pub p3: TriangleBlock,
    pub branch: Branch,
    pub realized: ConstMatrix,
}

/// Completes three triangle blocks to an element preserving `(J_I, J_N)`.
pub fn complete_group_element(
    p1: TriangleBlock,
    p2: TriangleBlock,
    p3: TriangleBlock,
    branch: Branch,
) -> Result<GroupElement, Error> {
    let inv = p1.inverse().ok_or(Error::SingularP1)?;
    let correction = p3.mul(&inv).mul(&p2);
    let realized = match branch {
        Branch::First => {
            let p4 = inv.add(&correction);
            Matrix::from_blocks(&p1.matrix(), &p2.matrix(), &p3.matrix(), &p4.matrix())
        }
        Branch::Second => {
            let lower = inv.neg().add(&correction);
            Matrix::from_blocks(&p2.matrix(), &p1.matrix(), &lower.matrix(), &p3.matrix())
        }
    };
    Ok(GroupElement { p1, p2, p3, branch, realized })
}

/// `M·J_I·Mᵗ = J_I` and `M·J_N·Mᵗ = J_N`.
pub fn preserves_pair(m: &ConstMatrix) -> bool {
    if m.n() != 6 {
        return false;
    }
    let (ji, jn) = canonical_skew_pair();
    let mt = m.transpose();
    m.mul(&ji).mul(&mt) == ji && m.mul(&jn).mul(&mt) == jn
}

impl GroupElement {
    pub fn identity() -> GroupElement {
        complete_group_element(TriangleBlock::identity(), TriangleBlock::zero(), TriangleBlock::zero(), Branch::First)
            .expect("identity block is invertible")
    }

    pub fn is_identity(&self) -> bool {
        self.realized == ConstMatrix::identity(6)
    }

    /// Recovers the block description of a pair-preserving matrix.
    pub fn from_realized(m: &ConstMatrix) -> Result<GroupElement, Error> {
        let not_in_group = || Error::PreconditionViolated("matrix does not preserve the canonical pair".into());
        if !preserves_pair(m) {
            return Err(not_in_group());
        }
        let block = |r, c| TriangleBlock::from_matrix(&m.block(r, c, 3)).ok_or_else(not_in_group);
        let (top_left, top_right, bottom_right) = (block(0, 0)?, block(0, 3)?, block(3, 3)?);
        let g = if top_left.is_invertible() {
            complete_group_element(top_left, top_right, block(3, 0)?, Branch::First)?
        } else {
            complete_group_element(top_right, top_left, bottom_right, Branch::Second)?
        };
        if g.realized != *m {
            return Err(not_in_group());
        }
        Ok(g)
    }

    /// `self · other`.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        GroupElement::from_realized(&self.realized.mul(&other.realized)).expect("the group is closed")
    }

    pub fn inverse(&self) -> GroupElement {
        let inv = self.realized.inverse().expect("group elements have determinant 1");
        GroupElement::from_realized(&inv).expect("the group is closed under inverses")
    }

    /// The element acting diagonally, `[[a·Id, b·Id], [c·Id, d·Id]]` with `ad - bc = 1`.
    pub fn diagonal(
        a: &GaussianRational,
        b: &GaussianRational,
        c: &GaussianRational,
        d: &GaussianRational,
    ) -> Result<GroupElement, Error> {
        if &(a * d) - &(b * c) != GaussianRational::one() {
            return Err(Error::PreconditionViolated("diagonal action needs ad - bc = 1".into()));
        }
        if a.is_zero() {
            complete_group_element(
                TriangleBlock::scalar(b.clone()),
                TriangleBlock::scalar(a.clone()),
                TriangleBlock::scalar(d.clone()),
                Branch::Second,
            )
        } else {
            complete_group_element(
                TriangleBlock::scalar(a.clone()),
                TriangleBlock::scalar(b.clone()),
                TriangleBlock::scalar(c.clone()),
                Branch::First,
            )
        }
    }
}

fn random_rational(rng: &mut ChaCha8Rng, bound: i64) -> GaussianRational {
    GaussianRational::from_frac(rng.gen_range(-bound..=bound), rng.gen_range(1..=bound))
}

/// A reproducible element with parameters `n/d`, `|n| <= bound`, `1 <= d <= bound`.
pub fn random_group_element(seed: u64, bound: i64) -> GroupElement {
    assert!(bound >= 1, "bound must be at least 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let block = |rng: &mut ChaCha8Rng| {
        TriangleBlock::new(random_rational(rng, bound), random_rational(rng, bound), random_rational(rng, bound))
    };
    let mut p1 = block(&mut rng);
    while !p1.is_invertible() {
        p1 = block(&mut rng);
    }
    let (p2, p3) = (block(&mut rng), block(&mut rng));
    let branch = if rng.gen_bool(0.5) { Branch::First } else { Branch::Second };
    complete_group_element(p1, p2, p3, branch).expect("P1 is invertible")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn identity_completion() {
        let g = complete_group_element(TriangleBlock::identity(), TriangleBlock::zero(), TriangleBlock::zero(), Branch::First)
            .unwrap();
        assert_eq!(g.realized, ConstMatrix::identity(6));
        assert!(g.is_identity());
    }

    #[test]
    fn completion_with_zero_p3_has_identity_p4() {
        let p2 = TriangleBlock::new(gr(3), GaussianRational::from_frac(-1, 2), gr(7));
        let g = complete_group_element(TriangleBlock::identity(), p2, TriangleBlock::zero(), Branch::First).unwrap();
        assert_eq!(g.realized.block(3, 3, 3), ConstMatrix::identity(3));
        assert!(preserves_pair(&g.realized));
        assert_eq!(g.realized.det(), gr(1));
    }

    #[test]
    fn second_branch_preserves_the_pair() {
        let p1 = TriangleBlock::new(gr(2), gr(1), gr(-3));
        let p2 = TriangleBlock::new(gr(0), gr(5), gr(1));
        let p3 = TriangleBlock::new(gr(1), gr(0), GaussianRational::from_frac(2, 3));
        let g = complete_group_element(p1, p2, p3, Branch::Second).unwrap();
        assert!(preserves_pair(&g.realized));
        assert_eq!(g.realized.det(), gr(1));
        assert_eq!(GroupElement::from_realized(&g.realized).unwrap().realized, g.realized);
    }

    #[test]
    fn singular_p1_is_rejected() {
        let r = complete_group_element(TriangleBlock::zero(), TriangleBlock::identity(), TriangleBlock::zero(), Branch::First);
        assert_eq!(r, Err(Error::SingularP1));
    }

    #[test]
    fn preserves_pair_examples() {
        assert!(preserves_pair(&ConstMatrix::identity(6)));
        assert!(!preserves_pair(&ConstMatrix::identity(6).scale(&gr(2))));
    }

    #[test]
    fn triangle_inverse() {
        let b = TriangleBlock::new(gr(2), gr(-1), GaussianRational::from_frac(1, 3));
        let inv = b.inverse().unwrap();
        assert_eq!(b.mul(&inv), TriangleBlock::identity());
        assert_eq!(b.matrix().inverse().unwrap(), inv.matrix());
        assert!(TriangleBlock::zero().inverse().is_none());
    }

    #[test]
    fn sampling_is_deterministic() {
        let g = random_group_element(0, 5);
        assert_eq!(g, random_group_element(0, 5));
        assert!(preserves_pair(&g.realized));
        assert_ne!(random_group_element(1, 5), g);
    }

    #[test]
    fn random_elements_form_a_group() {
        for seed in 0..100 {
            let g = random_group_element(seed, 4);
            assert!(preserves_pair(&g.realized), "seed {seed}");
            assert_eq!(g.realized.det(), gr(1), "seed {seed}");
            let h = random_group_element(seed + 1000, 4);
            let gh = g.compose(&h);
            assert!(preserves_pair(&gh.realized));
            assert_eq!(g.compose(&g.inverse()).realized, ConstMatrix::identity(6));
        }
        let branches: std::collections::HashSet<_> = (0..20).map(|s| random_group_element(s, 3).branch).collect();
        assert_eq!(branches.len(), 2);
    }

    #[test]
    fn diagonal_elements() {
        let swap = GroupElement::diagonal(&gr(0), &gr(1), &gr(-1), &gr(0)).unwrap();
        assert_eq!(swap.branch, Branch::Second);
        let z = ConstMatrix::zeros(3);
        let id = ConstMatrix::identity(3);
        assert_eq!(swap.realized, Matrix::from_blocks(&z, &id, &id.scale(&gr(-1)), &z));
        let g = GroupElement::diagonal(&gr(2), &gr(3), &gr(1), &gr(2)).unwrap();
        assert!(preserves_pair(&g.realized));
        assert!(GroupElement::diagonal(&gr(1), &gr(1), &gr(1), &gr(1)).is_err());
    }
}
