//! Data files: a header `d,l,n_1,...,n_l`, then `d` rows of `n = Σ n_j`
//! values, observations of scenario 1 first.

use std::path::Path;

use regrisk::DataMatrix;

use crate::CliError;

fn at(path: &Path, line: u64, column: usize, msg: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("{}:{line}:{column}: {msg}", path.display()))
}

pub fn read_data(path: &Path) -> Result<DataMatrix, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let mut records = reader.records();

    let header = match records.next() {
        Some(r) => r.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?,
        None => return Err(at(path, 1, 1, "empty file, expected header d,l,n_1,...,n_l")),
    };
    let line = header.position().map_or(1, |p| p.line());
    let ints: Vec<usize> = header
        .iter()
        .enumerate()
        .map(|(k, f)| {
            f.parse::<usize>()
                .map_err(|_| at(path, line, k + 1, format!("expected a nonnegative integer, found {f:?}")))
        })
        .collect::<Result<_, _>>()?;
    if ints.len() < 3 {
        return Err(at(path, line, ints.len() + 1, "header needs d, l and at least one block size"));
    }
    let (d, l, blocks) = (ints[0], ints[1], ints[2..].to_vec());
    if blocks.len() != l {
        return Err(at(path, line, 2, format!("l = {l} but {} block sizes follow", blocks.len())));
    }
    if d == 0 {
        return Err(at(path, line, 1, "d must be positive"));
    }
    if let Some(k) = blocks.iter().position(|&b| b == 0) {
        return Err(at(path, line, k + 3, "empty scenario block"));
    }
    let n: usize = blocks.iter().sum();

    let mut values = Vec::with_capacity(d * n);
    let mut rows = 0;
    for record in records {
        let record = record.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        if rows == d {
            return Err(at(path, line, 1, format!("more than d = {d} data rows")));
        }
        if record.len() != n {
            return Err(at(
                path,
                line,
                record.len().min(n) + 1,
                format!("expected {n} values, found {}", record.len()),
            ));
        }
        for (k, f) in record.iter().enumerate() {
            let v: f64 = f
                .parse()
                .ok()
                .filter(|v: &f64| v.is_finite())
                .ok_or_else(|| at(path, line, k + 1, format!("not a finite number: {f:?}")))?;
            values.push(v);
        }
        rows += 1;
    }
    if rows != d {
        return Err(at(path, line + rows as u64 + 1, 1, format!("expected {d} data rows, found {rows}")));
    }
    Ok(DataMatrix::new(d, blocks, values)?)
}
