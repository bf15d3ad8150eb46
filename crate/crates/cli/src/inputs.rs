//! Input source resolution: inline values, `@path` files, `-` for stdin.

use std::io::Read;

use crate::Failure;

/// What an input argument resolved to: a single value or a batch of lines
/// (stdin with several nonempty lines).
pub enum Input {
    Single(String),
    Batch(Vec<String>),
}

pub fn resolve(arg: &str) -> Result<Input, Failure> {
    if arg == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::Invalid(format!("cannot read stdin: {e}")))?;
        let lines: Vec<String> = buf
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(str::to_string)
            .collect();
        return match lines.len() {
            0 => Err(Failure::Invalid("stdin was empty".to_string())),
            1 => Ok(Input::Single(lines.into_iter().next().unwrap())),
            _ => Ok(Input::Batch(lines)),
        };
    }
    if let Some(path) = arg.strip_prefix('@') {
        let content = std::fs::read_to_string(path)
            .map_err(|e| Failure::Invalid(format!("cannot read {path}: {e}")))?;
        let trimmed = content.trim().to_string();
        if trimmed.is_empty() {
            return Err(Failure::Invalid(format!("{path} is empty")));
        }
        return Ok(Input::Single(trimmed));
    }
    Ok(Input::Single(arg.to_string()))
}
