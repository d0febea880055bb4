use std::io::BufRead;

use anyhow::{bail, Result};
use num_traits::{Signed, ToPrimitive};
use rado_core::game::{GameState, Player};
use rado_core::strategies::{by_name, Strategy, StrategyParams};
use rado_core::{Error, RadoSystem};

use crate::args::PlayArgs;
use crate::commands::{game_config, Ctx};
use crate::input::{load_board, load_system};

/// `(alpha, beta, b)` with `alpha x1 - beta x2 = b`, for single equations in two unknowns
/// whose coefficients differ in sign.
pub fn pair_equation(sys: &RadoSystem) -> Option<(u64, u64, i64)> {
    if sys.rows() != 1 || sys.cols() != 2 {
        return None;
    }
    let (a1, a2, b) = (sys.entry(0, 0).clone(), sys.entry(0, 1).clone(), sys.rhs()[0].clone());
    let (a1, a2, b) = if a1.is_negative() { (-a1, -a2, -b) } else { (a1, a2, b) };
    if !a1.is_positive() || !a2.is_negative() {
        return None;
    }
    Some(((a1).to_u64()?, (-a2).to_u64()?, b.to_i64()?))
}

fn board_line(state: &GameState) -> String {
    let show = |p: Player| state.claimed_by(p).iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
    format!("maker: [{}]  breaker: [{}]  open: {}", show(Player::Maker), show(Player::Breaker), state.unclaimed().len())
}

/// Plays on the terminal; each side without a strategy reads its moves from `input`.
pub fn play_cmd(ctx: &mut Ctx, a: &PlayArgs, input: &mut dyn BufRead) -> Result<()> {
    let h = load_board(&a.input.system, &a.input.board, ctx.seed)?;
    let pair = if a.input.board.hypergraph.is_none() { pair_equation(&load_system(&a.input.system)?.1) } else { None };
    let config = game_config(&a.game);
    let params = StrategyParams { seed: ctx.seed, pair_equation: pair, solver: Some(ctx.solver(config)) };
    let mut maker: Option<Box<dyn Strategy>> = a.maker.as_deref().map(|n| by_name(n, &h, &params)).transpose()?;
    let mut breaker: Option<Box<dyn Strategy>> = a.breaker.as_deref().map(|n| by_name(n, &h, &params)).transpose()?;
    if maker.is_some() && breaker.is_some() {
        bail!(Error::InvalidInput("one side must be left to the human".into()));
    }
    let out = &mut *ctx.out;
    writeln!(out, "board: {} elements, {} winning sets", h.num_vertices(), h.num_edges())?;
    let mut state = GameState::new(h, config)?;
    let mut line = String::new();
    while state.winner_check().is_none() {
        let player = state.to_move();
        let bot = match player {
            Player::Maker => maker.as_mut(),
            Player::Breaker => breaker.as_mut(),
        };
        if let Some(s) = bot {
            let v = s.next_move(&state)?;
            state = state.apply_move(v)?;
            writeln!(out, "{} ({}) claims {v}", player, s.name())?;
            continue;
        }
        writeln!(out, "{}", board_line(&state))?;
        write!(out, "{player} to move> ")?;
        out.flush()?;
        line.clear();
        if input.read_line(&mut line)? == 0 || line.trim() == "quit" {
            writeln!(out, "\ngame abandoned")?;
            return Ok(());
        }
        let v = match line.trim().parse::<u32>() {
            Ok(v) => v,
            Err(_) => {
                writeln!(out, "not a number: {}", line.trim())?;
                continue;
            }
        };
        match state.apply_move(v) {
            Ok(next) => state = next,
            Err(e) => writeln!(out, "{e}")?,
        }
    }
    let winner = state.winner_check().expect("loop ends on a decided game");
    writeln!(out, "{}", board_line(&state))?;
    match state.maker_edge() {
        Some(e) => writeln!(out, "maker wins with {{{}}}", e.iter().map(u32::to_string).collect::<Vec<_>>().join(", "))?,
        None => writeln!(out, "{winner} wins")?,
    }
    Ok(())
}
