use anyhow::{bail, Context, Result};
use rado_core::{sample_board, Board, Hypergraph, RadoSystem};

use crate::args::{BoardArgs, SystemArgs};

pub fn load_system(a: &SystemArgs) -> Result<(String, RadoSystem)> {
    if let Some(name) = &a.system {
        let sys = RadoSystem::builtin(name)
            .ok_or_else(|| rado_core::Error::InvalidInput(format!("unknown system {name}; try schur, 3ap or sidon")))?;
        return Ok((name.to_ascii_lowercase(), sys));
    }
    if let Some(coeffs) = &a.equation {
        let sys = RadoSystem::new(1, coeffs.len(), coeffs.iter().map(|&c| c.into()).collect(), vec![a.rhs.into()])?;
        return Ok((sys.id(), sys));
    }
    let Some(path) = &a.file else {
        bail!(rado_core::Error::InvalidInput("give a matrix file, --system or --equation".into()));
    };
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let sys = RadoSystem::parse(&text)?;
    Ok((sys.id(), sys))
}

/// The hypergraph a command plays on: read from JSON, or the solutions of the system on a board.
pub fn load_board(system: &SystemArgs, b: &BoardArgs, seed: u64) -> Result<Hypergraph> {
    if let Some(path) = &b.hypergraph {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        return Ok(Hypergraph::from_json(&text, None)?);
    }
    let (_, sys) = load_system(system)?;
    let board = match (&b.board, b.n, b.p) {
        (Some(members), _, _) => Board::new(members.iter().copied().max().unwrap_or(0), members.iter().copied())?,
        (None, Some(n), Some(p)) => {
            if !(0.0..=1.0).contains(&p) {
                bail!(rado_core::Error::InvalidInput(format!("p = {p} is not a probability")));
            }
            sample_board(n, p, seed)
        }
        (None, Some(n), None) => Board::full(n),
        (None, None, _) => bail!(rado_core::Error::InvalidInput("give --n, --board or --hypergraph".into())),
    };
    Ok(rado_core::solutions::enumerate_solutions(&sys, &board)?)
}
