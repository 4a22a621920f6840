//! Game table format: `n <count>` then `<hex-mask> <value>` for every nonempty
//! coalition. Values are written in shortest round-trip form.

use std::fmt::Write as _;

use super::{check_table_size, Game, GameSpec, TableGame};
use crate::{CharacteristicFunction, Coalition, Error, Result};

/// Writes every nonempty coalition value of `game` in ascending mask order.
pub fn store_table<F: CharacteristicFunction + ?Sized>(game: &F) -> Result<String> {
    let n = game.players();
    check_table_size(n)?;
    let mut out = format!("n {n}\n");
    for mask in 1..1u64 << n {
        let value = game.value(Coalition::from_bits(mask));
        writeln!(out, "{mask:x} {value}").expect("write to string");
    }
    Ok(out)
}

pub fn load_table(text: &str) -> Result<TableGame> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing `n <count>` header"))?;
    let n = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["n", count] => count
            .parse::<usize>()
            .map_err(|_| Error::parse(header_line, format!("bad player count `{count}`")))?,
        _ => {
            return Err(Error::parse(
                header_line,
                format!("expected `n <count>`, got `{header}`"),
            ))
        }
    };
    if n == 0 {
        return Err(Error::parse(header_line, "game needs at least one player"));
    }
    check_table_size(n).map_err(|e| Error::parse(header_line, e.to_string()))?;

    let size = 1usize << n;
    let mut values = vec![0.0f64; size];
    let mut seen = vec![false; size];
    seen[0] = true;
    for (line_no, line) in lines {
        let (mask, value) = match line.split_whitespace().collect::<Vec<_>>()[..] {
            [mask, value] => (mask, value),
            _ => {
                return Err(Error::parse(
                    line_no,
                    format!("expected `<hex-mask> <value>`, got `{line}`"),
                ))
            }
        };
        let digits = mask.strip_prefix("0x").unwrap_or(mask);
        let mask = u64::from_str_radix(digits, 16)
            .map_err(|_| Error::parse(line_no, format!("bad coalition mask `{mask}`")))?;
        if mask == 0 || mask as usize >= size {
            return Err(Error::parse(
                line_no,
                format!("coalition mask {mask:#x} out of range for {n} players"),
            ));
        }
        let value: f64 = value
            .parse()
            .map_err(|_| Error::parse(line_no, format!("bad value `{value}`")))?;
        if !value.is_finite() {
            return Err(Error::parse(line_no, format!("non-finite value `{value}`")));
        }
        if std::mem::replace(&mut seen[mask as usize], true) {
            return Err(Error::parse(line_no, format!("duplicate coalition {mask:#x}")));
        }
        values[mask as usize] = value;
    }
    if let Some(missing) = seen.iter().position(|&s| !s) {
        return Err(Error::invalid(format!("missing coalition {missing:#x}")));
    }
    TableGame::from_values(n, values)
}

/// Loads either a game table or a spec string, deciding by the first
/// significant line.
pub fn load_game(text: &str) -> Result<Game> {
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("");
    if first.starts_with("n ") || first == "n" {
        load_table(text).map(Game::Table)
    } else {
        let spec: GameSpec = first.parse()?;
        spec.generate()
    }
}
