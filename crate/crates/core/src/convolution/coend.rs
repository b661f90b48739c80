use crate::error::{FrobError, Result};
use crate::linalg::{cokernel, kron_all, RatMatrix, Rational};
use crate::monoidal::FiniteBase;

use super::{BaseFunctor, ConvolutionBase};

/// A coend realised as a quotient `ℚ^ambient → ℚ^dim` of an explicit ambient
/// space by the span of the relation columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoendSpace {
    pub name: String,
    pub ambient_dim: usize,
    /// One label per ambient basis vector.
    pub labels: Vec<String>,
    /// Group tuples in the order their relation blocks appear.
    pub tuples: Vec<Vec<usize>>,
    /// `ambient × (#tuples · block width)`; column `c` belongs to tuple
    /// `c / ambient_dim`.
    pub relations: RatMatrix,
    pub projection: RatMatrix,
    pub section: RatMatrix,
    /// Induced action of each group element on the quotient, by
    /// post-composition on the hom factor. Empty for discrete bases.
    pub action: Vec<RatMatrix>,
    pub(crate) tuple_labels: Vec<String>,
}

impl CoendSpace {
    pub fn dim(&self) -> usize {
        self.projection.rows()
    }

    /// Human-readable position of a relation column.
    pub fn relation_location(&self, col: usize) -> String {
        if self.ambient_dim == 0 || self.tuples.is_empty() {
            return format!("relation {col}");
        }
        let t = col / self.ambient_dim;
        format!(
            "relation {col} of {} (tuple {}, basis {})",
            self.name,
            self.tuple_labels[t],
            self.labels[col % self.ambient_dim]
        )
    }

    /// Quotient of `ℚ[G] ⊗ ℚ^{d₁} ⊗ … ⊗ ℚ^{d_m}` by the relations of all
    /// `arity`-tuples, with the integrand acting through `act`.
    pub(crate) fn sigma(
        base: &FiniteBase,
        name: &str,
        arity: usize,
        factor_dims: &[usize],
        act: impl Fn(&[usize]) -> Result<RatMatrix>,
    ) -> Result<Self> {
        let n = base.order();
        let vec_dim: usize = factor_dims.iter().product();
        let ambient_dim = n * vec_dim;
        let id_vec = RatMatrix::identity(vec_dim);
        let id_g = RatMatrix::identity(n);

        let tuples = all_tuples(n, arity);
        let mut blocks = Vec::with_capacity(tuples.len());
        for t in &tuples {
            let translate = right_translation(base, base.product(t));
            let block = translate.kron(&id_vec).sub(&id_g.kron(&act(t)?))?;
            blocks.push(block);
        }
        let relations = RatMatrix::hstack(ambient_dim, &blocks)?;
        let coker = cokernel(&relations);
        let action = base
            .elements()
            .map(|g| {
                let m = right_translation(base, g).kron(&id_vec);
                coker.projection.mat_mul(&m)?.mat_mul(&coker.section)
            })
            .collect::<Result<Vec<_>>>()?;

        let mut labels = Vec::with_capacity(ambient_dim);
        for x in base.elements() {
            for idx in multi_indices(factor_dims) {
                let parts: Vec<String> = idx.iter().map(ToString::to_string).collect();
                labels.push(format!("{}|{}", base.label(x), parts.join(".")));
            }
        }
        let tuple_labels = tuples.iter().map(|t| tuple_label(base, t)).collect();
        Ok(Self {
            name: name.into(),
            ambient_dim,
            labels,
            tuples,
            relations,
            projection: coker.projection,
            section: coker.section,
            action,
            tuple_labels,
        })
    }

    /// The coend over the discrete category of `G`, evaluated at the
    /// identity object: one copy of `ℚ^dim` per tuple multiplying to `e`,
    /// and no relations.
    pub(crate) fn discrete(base: &FiniteBase, name: &str, arity: usize, dim: usize) -> Self {
        let tuples: Vec<Vec<usize>> = all_tuples(base.order(), arity)
            .into_iter()
            .filter(|t| base.product(t) == base.identity())
            .collect();
        let ambient_dim = tuples.len() * dim;
        let tuple_labels: Vec<String> = tuples.iter().map(|t| tuple_label(base, t)).collect();
        let labels = tuple_labels
            .iter()
            .flat_map(|t| (0..dim).map(move |i| format!("{t}|{i}")))
            .collect();
        Self {
            name: name.into(),
            ambient_dim,
            labels,
            tuples,
            relations: RatMatrix::zeros(ambient_dim, 0),
            projection: RatMatrix::identity(ambient_dim),
            section: RatMatrix::identity(ambient_dim),
            action: Vec::new(),
            tuple_labels,
        }
    }
}

/// `e_x ↦ e_{xy}`. Since `G` is abelian this is also left translation.
pub(crate) fn right_translation(base: &FiniteBase, y: usize) -> RatMatrix {
    let n = base.order();
    let mut m = RatMatrix::zeros(n, n);
    for x in base.elements() {
        m.set(base.mul(x, y), x, Rational::ONE);
    }
    m
}

fn all_tuples(n: usize, arity: usize) -> Vec<Vec<usize>> {
    multi_indices(&vec![n; arity]).collect()
}

fn multi_indices(dims: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let total: usize = dims.iter().product();
    (0..total).map(move |mut k| {
        let mut idx = vec![0; dims.len()];
        for (slot, d) in idx.iter_mut().zip(dims).rev() {
            *slot = k % d;
            k /= d;
        }
        idx
    })
}

fn tuple_label(base: &FiniteBase, t: &[usize]) -> String {
    let parts: Vec<&str> = t.iter().map(|&g| base.label(g)).collect();
    format!("({})", parts.join(","))
}

/// Matrix of the map between quotients induced by `ambient: src → dst`.
///
/// The map is well defined when every relation of `src` lands in the span of
/// the relations of `dst`; otherwise the first offending relation column is
/// reported.
pub fn induced_map(src: &CoendSpace, dst: &CoendSpace, ambient: &RatMatrix, name: &str) -> Result<RatMatrix> {
    if ambient.shape() != (dst.ambient_dim, src.ambient_dim) {
        return Err(FrobError::Shape(format!(
            "{name}: ambient map is {}x{}, expected {}x{}",
            ambient.rows(),
            ambient.cols(),
            dst.ambient_dim,
            src.ambient_dim
        )));
    }
    if let Some(relation) = first_unannihilated(src, dst, ambient)? {
        return Err(FrobError::WellDefinedness {
            map: name.into(),
            relation,
        });
    }
    dst.projection.mat_mul(ambient)?.mat_mul(&src.section)
}

/// Index of the first relation column of `src` whose image under `ambient`
/// survives in the quotient `dst`.
pub(crate) fn first_unannihilated(src: &CoendSpace, dst: &CoendSpace, ambient: &RatMatrix) -> Result<Option<usize>> {
    let image = dst.projection.mat_mul(ambient)?.mat_mul(&src.relations)?;
    Ok((0..image.cols()).find(|&c| (0..image.rows()).any(|r| !image.get(r, c).is_zero())))
}

/// `F * G = ∫^{A,B} 𝒜(A⊗B, −) · FA ⊗ GB`.
pub fn convolution_product(f: &BaseFunctor, g: &BaseFunctor) -> Result<CoendSpace> {
    let base = match (f.base(), g.base()) {
        (ConvolutionBase::Sigma(a), ConvolutionBase::Sigma(b)) if a == b => a,
        (ConvolutionBase::Sigma(_), ConvolutionBase::Sigma(_)) => {
            return Err(FrobError::InstanceMismatch("convolution of functors on different bases".into()))
        }
        _ => {
            return Err(FrobError::UnsupportedStructure(
                "convolution products are computed on Sigma(G) bases only".into(),
            ))
        }
    };
    CoendSpace::sigma(base, "F*G", 2, &[f.dim(), g.dim()], |t| {
        Ok(kron_all([f.rho(t[0])?, g.rho(t[1])?]))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> FiniteBase {
        FiniteBase::zmod(n).unwrap()
    }

    #[test]
    fn trivial_group_one_dimensional() {
        let f = BaseFunctor::trivial(&z(1), 1);
        assert_eq!(convolution_product(&f, &f).unwrap().dim(), 1);
    }

    #[test]
    fn zero_dimensional_functor() {
        let zero = BaseFunctor::trivial(&z(2), 0);
        let reg = BaseFunctor::convolution_unit(&z(2));
        let c = convolution_product(&zero, &reg).unwrap();
        assert_eq!(c.ambient_dim, 0);
        assert_eq!(c.dim(), 0);
    }

    #[test]
    fn regular_z2_product_has_dimension_two() {
        let reg = BaseFunctor::regular(&z(2)).unwrap();
        let c = convolution_product(&reg, &reg).unwrap();
        assert_eq!(c.ambient_dim, 8);
        assert_eq!(c.dim(), 2);
        assert!(c.projection.mat_mul(&c.relations).unwrap().is_zero());
        assert!(c.projection.mat_mul(&c.section).unwrap().is_identity());
    }

    #[test]
    fn induced_action_is_a_representation() {
        let base = z(3);
        let reg = BaseFunctor::convolution_unit(&base);
        let c = convolution_product(&reg, &reg).unwrap();
        for g in base.elements() {
            for h in base.elements() {
                let lhs = c.action[g].mat_mul(&c.action[h]).unwrap();
                assert_eq!(lhs, c.action[base.mul(g, h)]);
            }
        }
    }

    #[test]
    fn base_mismatch_is_rejected() {
        let a = BaseFunctor::trivial(&z(2), 1);
        let b = BaseFunctor::trivial(&z(3), 1);
        assert!(matches!(convolution_product(&a, &b), Err(FrobError::InstanceMismatch(_))));
    }

    #[test]
    fn relation_locations_name_tuples() {
        let reg = BaseFunctor::convolution_unit(&z(2));
        let c = convolution_product(&reg, &reg).unwrap();
        assert_eq!(c.relation_location(9), "relation 9 of F*G (tuple (0,1), basis 0|0.1)");
    }

    #[test]
    fn induced_map_detects_non_equivariance() {
        let base = z(2);
        let reg = BaseFunctor::convolution_unit(&base);
        let c = convolution_product(&reg, &reg).unwrap();
        // the identity on the ambient space is well defined
        assert!(induced_map(&c, &c, &RatMatrix::identity(8), "id").unwrap().is_identity());
        // a projection onto one basis vector of V⊗W is not
        let p = RatMatrix::identity(2).kron(&RatMatrix::elementary(4, 4, 0, 0));
        assert!(matches!(
            induced_map(&c, &c, &p, "p"),
            Err(FrobError::WellDefinedness { .. })
        ));
    }
}
