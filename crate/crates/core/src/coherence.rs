//! Coherence of a conditional probability assessment on a finite family.
//!
//! [`check_coherence`] runs the iterative procedure: solve `Σ` for the current
//! subfamily; if it has no solution the assessment is incoherent, otherwise
//! compute `I₀` (members whose antecedent gets zero mass in every solution)
//! and continue on that subfamily until `I₀` is empty.
//!
//! [`check_coherence_oracle`] is the brute-force alternative: the assessment is
//! coherent iff `Σ_J` is solvable for every nonempty subfamily `J`.

use alloc::vec::Vec;

use crate::constituents::{build_constituents, ConstituentTable, PointMatrix};
use crate::events::KnowledgeBase;
use crate::ratlp::{i0_in_region, FeasibleRegion, Rational};
use crate::{Error, Limits};

/// One pass of the iterative check.
#[derive(Clone, Debug)]
pub struct Iteration {
    /// Members of the current subfamily, as indices into the original family.
    pub members: Vec<usize>,
    pub table: ConstituentTable,
    pub points: PointMatrix,
    pub feasible: bool,
    pub witness: Option<Vec<Rational>>,
    /// Present when the system was solvable; indices into the original family.
    pub i0: Option<Vec<usize>>,
}

/// A subfamily whose restricted assessment has no solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub members: Vec<usize>,
    pub assessment: Vec<Rational>,
}

#[derive(Clone, Debug)]
pub struct CoherenceVerdict {
    pub coherent: bool,
    pub trace: Vec<Iteration>,
    pub certificate: Option<Certificate>,
}

fn validate(family: &KnowledgeBase, assessment: &[Rational]) -> Result<(), Error> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if assessment.len() != family.len() {
        return Err(Error::DimensionMismatch {
            expected: family.len(),
            got: assessment.len(),
        });
    }
    Ok(())
}

pub fn check_coherence(
    family: &KnowledgeBase,
    assessment: &[Rational],
    limits: &Limits,
) -> Result<CoherenceVerdict, Error> {
    validate(family, assessment)?;
    family.vocab().check_guard(limits.max_atoms)?;

    let mut members: Vec<usize> = (0..family.len()).collect();
    let mut trace = Vec::new();
    loop {
        let sub = family.subfamily(&members)?;
        let sub_assessment: Vec<Rational> = members.iter().map(|&i| assessment[i].clone()).collect();
        let table = build_constituents(&sub, limits)?;
        let sigma = table.sigma(&sub_assessment)?;
        let points = PointMatrix {
            rows: sigma.points().to_vec(),
        };

        let Some(region) = FeasibleRegion::new(&sigma)? else {
            trace.push(Iteration {
                members: members.clone(),
                table,
                points,
                feasible: false,
                witness: None,
                i0: None,
            });
            return Ok(CoherenceVerdict {
                coherent: false,
                trace,
                certificate: Some(Certificate {
                    members,
                    assessment: sub_assessment,
                }),
            });
        };

        let phi_rows: Vec<Vec<usize>> = (0..sub.len()).map(|j| table.rows_within_antecedent(j)).collect();
        let local_i0 = i0_in_region(&region, &phi_rows)?;
        let i0: Vec<usize> = local_i0.iter().map(|&j| members[j]).collect();
        debug_assert!(i0.len() < members.len(), "I0 must be a strict subset");
        trace.push(Iteration {
            members,
            table,
            points,
            feasible: true,
            witness: Some(region.witness().to_vec()),
            i0: Some(i0.clone()),
        });
        if i0.is_empty() {
            return Ok(CoherenceVerdict {
                coherent: true,
                trace,
                certificate: None,
            });
        }
        members = i0;
    }
}

/// Whether `Σ_J` is solvable for the subfamily `members`.
pub fn subfamily_solvable(
    family: &KnowledgeBase,
    assessment: &[Rational],
    members: &[usize],
    limits: &Limits,
) -> Result<bool, Error> {
    validate(family, assessment)?;
    let sub = family.subfamily(members)?;
    let sub_assessment: Vec<Rational> = members.iter().map(|&i| assessment[i].clone()).collect();
    let table = build_constituents(&sub, limits)?;
    Ok(FeasibleRegion::new(&table.sigma(&sub_assessment)?)?.is_some())
}

/// Brute force over all `2^n - 1` nonempty subfamilies.
pub fn check_coherence_oracle(
    family: &KnowledgeBase,
    assessment: &[Rational],
    limits: &Limits,
) -> Result<bool, Error> {
    validate(family, assessment)?;
    let n = family.len();
    if n > limits.max_oracle_family {
        return Err(Error::SubsetGuard {
            size: n,
            limit: limits.max_oracle_family,
        });
    }
    for mask in 1u64..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        if !subfamily_solvable(family, assessment, &members, limits)? {
            return Ok(false);
        }
    }
    Ok(true)
}
