//! Report assembly for each subcommand.

use nhom::deriv::{solve as solve_space, Kind, Membership};
use nhom::extension::{build_check, decomposition_report, embedding_report, ExtensionError};
use nhom::format::serialize_algebra;
use nhom::harness::Harness;
use nhom::linalg::{format_scalar, SubspaceBasis};
use nhom::report::{mat_strings, sha256_hex, to_canonical_json, DimEntry, PropReport};
use nhom::{NHomAlgebra, Parity, ValidationReport};
use serde::Serialize;

use crate::Outcome;

#[derive(Serialize)]
struct Tool {
    name: &'static str,
    version: &'static str,
}

const TOOL: Tool = Tool {
    name: env!("CARGO_PKG_NAME"),
    version: env!("CARGO_PKG_VERSION"),
};

#[derive(Serialize)]
struct Envelope<T: Serialize> {
    command: &'static str,
    input_sha256: String,
    passed: bool,
    tool: Tool,
    #[serde(flatten)]
    body: T,
}

fn envelope<T: Serialize>(command: &'static str, input: &[u8], passed: bool, body: T) -> Outcome {
    let text = to_canonical_json(&Envelope {
        command,
        input_sha256: sha256_hex(input),
        passed,
        tool: TOOL,
        body,
    });
    Outcome { text, passed }
}

fn vectors(s: &SubspaceBasis) -> Vec<Vec<String>> {
    s.vectors().iter().map(|v| v.iter().map(format_scalar).collect()).collect()
}

#[derive(Serialize)]
struct ValidateBody {
    validation: ValidationReport,
}

pub fn validate(alg: &NHomAlgebra, input: &[u8]) -> Outcome {
    let validation = alg.validate();
    let passed = validation.is_ok();
    envelope("validate", input, passed, ValidateBody { validation })
}

#[derive(Serialize)]
struct CenterBody {
    center: CenterPart,
}

#[derive(Serialize)]
struct CenterPart {
    dim: usize,
    even: Vec<Vec<String>>,
    odd: Vec<Vec<String>>,
}

pub fn center(alg: &NHomAlgebra, input: &[u8]) -> Outcome {
    let (z0, z1) = alg.center();
    let body = CenterBody {
        center: CenterPart {
            dim: z0.dim() + z1.dim(),
            even: vectors(&z0),
            odd: vectors(&z1),
        },
    };
    envelope("center", input, true, body)
}

#[derive(Serialize)]
struct SpaceJson {
    basis: Vec<Vec<Vec<String>>>,
    dim: usize,
    k: usize,
    kind: String,
    /// Every basis element re-checked against the defining identity.
    verified: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    witnesses: Vec<Vec<Vec<Vec<String>>>>,
    xi: Parity,
}

#[derive(Serialize)]
struct SolveBody {
    dims: Vec<DimEntry>,
    kmax: usize,
    spaces: Vec<SpaceJson>,
}

pub fn solve(alg: &NHomAlgebra, input: &[u8], kind: Kind, kmax: usize, parity: Option<Parity>) -> Outcome {
    let parities: Vec<Parity> = parity.map_or_else(|| Parity::BOTH.to_vec(), |p| vec![p]);
    let levels = if kind == Kind::Omega { 0 } else { kmax };
    let mut spaces = Vec::new();
    let mut dims = Vec::new();
    for k in 0..=levels {
        for &xi in &parities {
            let s = solve_space(alg, kind, k, xi);
            let member = Membership::new(alg, kind, k, xi);
            spaces.push(SpaceJson {
                basis: s.basis.iter().map(|b| mat_strings(b.mat())).collect(),
                dim: s.dim(),
                k,
                kind: kind.to_string(),
                verified: s.basis.iter().all(|b| member.contains(b)),
                witnesses: s.witnesses.iter().map(|ws| ws.iter().map(mat_strings).collect()).collect(),
                xi,
            });
            dims.push(DimEntry {
                space: kind.to_string(),
                k,
                xi,
                dim: s.dim(),
            });
        }
    }
    let passed = spaces.iter().all(|s| s.verified);
    envelope("solve", input, passed, SolveBody { dims, kmax, spaces })
}

#[derive(Serialize)]
struct PropsBody {
    kmax: usize,
    reports: Vec<PropReport>,
    samples: usize,
    seed: u64,
}

pub fn props(harness: &Harness, input: &[u8], seed: u64, samples: usize) -> Outcome {
    let reports = harness.all(samples);
    let passed = reports.iter().all(PropReport::passed);
    let body = PropsBody {
        kmax: harness.kmax(),
        reports,
        samples,
        seed,
    };
    envelope("props", input, passed, body)
}

pub fn extend(alg: &NHomAlgebra) -> Result<Outcome, ExtensionError> {
    let te = build_check(alg)?;
    Ok(Outcome {
        text: serialize_algebra(&te.ext),
        passed: true,
    })
}

#[derive(Serialize)]
struct DecomposeBody {
    complement: ParityPair,
    derived: ParityPair,
    kmax: usize,
    projection: Vec<Vec<String>>,
    reports: Vec<PropReport>,
}

#[derive(Serialize)]
struct ParityPair {
    even: Vec<Vec<String>>,
    odd: Vec<Vec<String>>,
}

fn pair(p: &[SubspaceBasis; 2]) -> ParityPair {
    ParityPair {
        even: vectors(&p[0]),
        odd: vectors(&p[1]),
    }
}

pub fn decompose(alg: &NHomAlgebra, input: &[u8], kmax: usize, seed: u64) -> Result<Outcome, ExtensionError> {
    let te = build_check(alg)?;
    let reports = vec![embedding_report(&te, kmax, seed), decomposition_report(&te, kmax)];
    let passed = reports.iter().all(PropReport::passed);
    let body = DecomposeBody {
        complement: pair(&te.complement),
        derived: pair(&te.derived),
        kmax,
        projection: mat_strings(te.projection()),
        reports,
    };
    Ok(envelope("decompose", input, passed, body))
}
