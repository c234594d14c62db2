//! Parsing and validation of the group, ring and weight specifiers.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use modsym::congruence::{CongruenceKind, CongruenceSubgroup};
use modsym::ring::{PrimeField, Ring};
use modsym::triangle::SubgroupRep;
use modsym::weight::{Variant, WeightModule};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Gamma0(u64),
    Gamma1(u64),
    PermFile(PathBuf),
}

impl FromStr for GroupSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (kind, arg) = s
            .split_once(':')
            .ok_or_else(|| format!("expected gamma0:N, gamma1:N or perm-file:PATH, got {s:?}"))?;
        let level = || {
            arg.parse::<u64>()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| format!("level must be a positive integer, got {arg:?}"))
        };
        match kind {
            "gamma0" => Ok(GroupSpec::Gamma0(level()?)),
            "gamma1" => Ok(GroupSpec::Gamma1(level()?)),
            "perm-file" if !arg.is_empty() => Ok(GroupSpec::PermFile(PathBuf::from(arg))),
            _ => Err(format!("unknown group specifier {s:?}")),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Gamma0(n) => write!(f, "gamma0:{n}"),
            GroupSpec::Gamma1(n) => write!(f, "gamma1:{n}"),
            GroupSpec::PermFile(p) => write!(f, "perm-file:{}", p.display()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingSpec {
    Integers,
    Rationals,
    PrimeField(u64),
    /// `Q(λ_n)` for the `n` of the group.
    Lambda,
}

impl FromStr for RingSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "z" => Ok(RingSpec::Integers),
            "q" => Ok(RingSpec::Rationals),
            "lambda" => Ok(RingSpec::Lambda),
            _ => {
                let p = s
                    .strip_prefix("fp:")
                    .ok_or_else(|| format!("expected z, q, fp:p or lambda, got {s:?}"))?;
                let p: u64 = p.parse().map_err(|_| format!("bad prime {p:?}"))?;
                PrimeField::new(p).map_err(|e| e.to_string())?;
                Ok(RingSpec::PrimeField(p))
            }
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "z"),
            RingSpec::Rationals => write!(f, "q"),
            RingSpec::PrimeField(p) => write!(f, "fp:{p}"),
            RingSpec::Lambda => write!(f, "lambda"),
        }
    }
}

/// A resolved group: the permutation representation and, for congruence
/// subgroups, the matrix description needed by Hecke operators.
#[derive(Debug, Clone)]
pub struct Group {
    pub subgroup: SubgroupRep,
    pub congruence: Option<CongruenceSubgroup>,
}

impl Group {
    pub fn load(spec: &GroupSpec) -> Result<Self, CliError> {
        let congruence = match spec {
            GroupSpec::Gamma0(n) => CongruenceSubgroup::gamma0(*n)?,
            GroupSpec::Gamma1(n) => CongruenceSubgroup::gamma1(*n)?,
            GroupSpec::PermFile(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
                return Ok(Group {
                    subgroup: SubgroupRep::from_json(&text)?,
                    congruence: None,
                });
            }
        };
        Ok(Group {
            subgroup: congruence.subgroup().clone(),
            congruence: Some(congruence),
        })
    }

    pub fn n(&self) -> u64 {
        self.subgroup.n()
    }

    /// `−1` acts through `(−1)^k` on `Γ₁(N)` and in odd weight; otherwise
    /// the projective module is used.
    pub fn variant(&self, k: u64) -> Variant {
        let gamma1 = self.congruence.as_ref().is_some_and(|c| c.kind() == CongruenceKind::Gamma1);
        if k % 2 == 1 || gamma1 {
            Variant::PlusMinusOne
        } else {
            Variant::Projective
        }
    }

    pub fn weight_module<R: Ring>(&self, ring: R, k: u64) -> Result<WeightModule<R>, CliError> {
        Ok(WeightModule::new(ring, self.n(), k, self.variant(k))?)
    }
}

#[derive(Debug, Clone)]
pub struct Job {
    pub group_spec: GroupSpec,
    pub group: Group,
    pub weight: u64,
    pub ring: RingSpec,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specifiers_round_trip() {
        for s in ["gamma0:11", "gamma1:7", "perm-file:data/delta5.json"] {
            assert_eq!(s.parse::<GroupSpec>().unwrap().to_string(), s);
        }
        for s in ["z", "q", "fp:2", "lambda"] {
            assert_eq!(s.parse::<RingSpec>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn bad_specifiers() {
        assert!("gamma0:0".parse::<GroupSpec>().is_err());
        assert!("gamma2:5".parse::<GroupSpec>().is_err());
        assert!("perm-file:".parse::<GroupSpec>().is_err());
        assert!("fp:4".parse::<RingSpec>().is_err());
        assert!("r".parse::<RingSpec>().is_err());
    }
}
