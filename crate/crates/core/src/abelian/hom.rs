use super::group::{canonical_group, FGAbelianGroup, PresentedAbelianGroup};
use super::hnf::{column_basis, in_column_span, integer_kernel, solve_in_column_span};
use super::matrix::IntMatrix;
use super::AbelianError;

/// A homomorphism of presented groups, given on generators.
///
/// `matrix` is (target generators) × (source generators). Construction
/// checks that relations of the source land in the relation lattice of the
/// target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    source: PresentedAbelianGroup,
    target: PresentedAbelianGroup,
    matrix: IntMatrix,
}

impl Homomorphism {
    pub fn new(
        source: PresentedAbelianGroup,
        target: PresentedAbelianGroup,
        matrix: IntMatrix,
    ) -> Result<Self, AbelianError> {
        if matrix.shape() != (target.generators(), source.generators()) {
            return Err(AbelianError::Shape(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.generators(),
                source.generators()
            )));
        }
        let images = matrix.mul(source.relations())?;
        for j in 0..images.cols() {
            if !in_column_span(target.relations(), &images.column(j))? {
                return Err(AbelianError::NotWellDefined(format!(
                    "source relation {j} maps to {:?}, outside the target relations",
                    images.column(j)
                )));
            }
        }
        Ok(Homomorphism {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(group: &PresentedAbelianGroup) -> Self {
        Homomorphism {
            source: group.clone(),
            target: group.clone(),
            matrix: IntMatrix::identity(group.generators()),
        }
    }

    pub fn zero(source: &PresentedAbelianGroup, target: &PresentedAbelianGroup) -> Self {
        Homomorphism {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zeros(target.generators(), source.generators()),
        }
    }

    /// Multiplication by an integer on every generator.
    pub fn scalar(group: &PresentedAbelianGroup, k: i64) -> Result<Self, AbelianError> {
        Self::new(
            group.clone(),
            group.clone(),
            IntMatrix::identity(group.generators()).scale(k)?,
        )
    }

    pub fn source(&self) -> &PresentedAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &PresentedAbelianGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Homomorphism) -> Result<Self, AbelianError> {
        if self.target != next.source {
            return Err(AbelianError::Shape(
                "composition of maps whose target and source differ".into(),
            ));
        }
        Ok(Homomorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            matrix: next.matrix.mul(&self.matrix)?,
        })
    }

    pub fn sub(&self, other: &Homomorphism) -> Result<Self, AbelianError> {
        self.check_parallel(other)?;
        Ok(Homomorphism {
            matrix: self.matrix.sub(&other.matrix)?,
            ..self.clone()
        })
    }

    pub fn add(&self, other: &Homomorphism) -> Result<Self, AbelianError> {
        self.check_parallel(other)?;
        Ok(Homomorphism {
            matrix: self.matrix.add(&other.matrix)?,
            ..self.clone()
        })
    }

    fn check_parallel(&self, other: &Homomorphism) -> Result<(), AbelianError> {
        if self.source != other.source || self.target != other.target {
            return Err(AbelianError::Shape("maps are not parallel".into()));
        }
        Ok(())
    }

    /// True when every generator maps into the target's relation lattice.
    pub fn is_zero(&self) -> Result<bool, AbelianError> {
        for j in 0..self.matrix.cols() {
            if !in_column_span(self.target.relations(), &self.matrix.column(j))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as maps of groups (not as matrices).
    pub fn agrees_with(&self, other: &Homomorphism) -> Result<bool, AbelianError> {
        self.sub(other)?.is_zero()
    }

    pub fn direct_sum(&self, other: &Homomorphism) -> Self {
        Homomorphism {
            source: self.source.direct_sum(&other.source),
            target: self.target.direct_sum(&other.target),
            matrix: IntMatrix::block_diag(&[&self.matrix, &other.matrix]),
        }
    }

    pub fn kernel(&self) -> Result<FGAbelianGroup, AbelianError> {
        homology_at(&Homomorphism::zero(&PresentedAbelianGroup::zero(), &self.source), self)
    }

    pub fn cokernel(&self) -> Result<FGAbelianGroup, AbelianError> {
        homology_at(self, &Homomorphism::zero(&self.target, &PresentedAbelianGroup::zero()))
    }

    pub fn is_isomorphism(&self) -> Result<bool, AbelianError> {
        Ok(self.kernel()?.is_trivial() && self.cokernel()?.is_trivial())
    }
}

/// `ker(g) / im(f)` for `A --f--> B --g--> C` with `g∘f = 0`.
pub fn homology_at(f: &Homomorphism, g: &Homomorphism) -> Result<FGAbelianGroup, AbelianError> {
    if f.target != g.source {
        return Err(AbelianError::Shape(
            "the middle groups of the two maps differ".into(),
        ));
    }
    if !f.then(g)?.is_zero()? {
        return Err(AbelianError::NotAComplex);
    }
    let middle = &f.target;
    let m = middle.generators();

    // x ∈ ker g  ⇔  G·x − R_C·y = 0 for some y.
    let stacked = g.matrix.hstack(&g.target.relations().neg()?)?;
    let kernel = integer_kernel(&stacked)?;
    let kernel_gens = kernel.submatrix(0..m, 0..kernel.cols());
    let basis = column_basis(&kernel_gens)?;

    // im f + relations of B, written in the kernel basis.
    let sub = f.matrix.hstack(middle.relations())?;
    let mut coords = Vec::with_capacity(sub.cols());
    for j in 0..sub.cols() {
        let c = solve_in_column_span(&basis, &sub.column(j))?.ok_or_else(|| {
            AbelianError::Shape("image does not lie in the kernel".into())
        })?;
        coords.push(c);
    }
    let rel = IntMatrix::from_columns(basis.cols(), &coords);
    canonical_group(&PresentedAbelianGroup::new(basis.cols(), rel)?)
}

/// Homology at each interior spot of a sequence of composable maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessReport {
    /// `spots[i]` is the homology at the target of `seq[i]`.
    pub spots: Vec<FGAbelianGroup>,
}

impl ExactnessReport {
    pub fn is_exact(&self) -> bool {
        self.spots.iter().all(FGAbelianGroup::is_trivial)
    }

    /// Indices and groups of the spots where exactness fails.
    pub fn failures(&self) -> Vec<(usize, &FGAbelianGroup)> {
        self.spots
            .iter()
            .enumerate()
            .filter(|(_, g)| !g.is_trivial())
            .collect()
    }
}

pub fn is_exact(seq: &[Homomorphism]) -> Result<ExactnessReport, AbelianError> {
    let spots = seq
        .windows(2)
        .map(|w| homology_at(&w[0], &w[1]))
        .collect::<Result<_, _>>()?;
    Ok(ExactnessReport { spots })
}
