//! Point files: CSV rows `id,x,y` (or `x,y`) with an optional header, or a
//! JSON array of `[x, y]` pairs.

use crate::CliError;
use quadrot_geom::{Point, PointSet};

pub fn parse_points(text: &str) -> Result<PointSet, CliError> {
    let pts = if text.trim_start().starts_with('[') { parse_json(text)? } else { parse_csv(text)? };
    PointSet::new(pts).map_err(|e| CliError::Parse(e.to_string()))
}

fn parse_json(text: &str) -> Result<Vec<Point>, CliError> {
    let rows: Vec<[f64; 2]> = serde_json::from_str(text)
        .map_err(|e| CliError::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
    Ok(rows.iter().enumerate().map(|(i, r)| Point::new(i as i64, r[0], r[1])).collect())
}

fn parse_csv(text: &str) -> Result<Vec<Point>, CliError> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(false).flexible(true).trim(csv::Trim::All).from_reader(text.as_bytes());
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| CliError::Parse(e.to_string()))?;
        let line = rec.position().map_or(i as u64 + 1, |p| p.line());
        if rec.iter().all(|f| f.is_empty()) {
            continue;
        }
        let fields: Vec<&str> = rec.iter().collect();
        if i == 0 && fields.iter().any(|f| f.parse::<f64>().is_err()) {
            continue;
        }
        let bad = |what: &str| CliError::Parse(format!("row {line}: {what}"));
        let num = |s: &str| s.parse::<f64>().map_err(|_| bad(&format!("not a number: {s:?}")));
        let p = match fields.as_slice() {
            [id, x, y] => Point::new(id.parse().map_err(|_| bad(&format!("not an integer id: {id:?}")))?, num(x)?, num(y)?),
            [x, y] => Point::new(out.len() as i64, num(x)?, num(y)?),
            _ => return Err(bad(&format!("expected 2 or 3 fields, got {}", fields.len()))),
        };
        out.push(p);
    }
    Ok(out)
}

/// CSV with 17 significant digits, which reads back bit-exactly.
pub fn write_points(ps: &PointSet) -> String {
    let mut s = String::from("id,x,y\n");
    for p in ps.iter() {
        s.push_str(&format!("{},{:.16e},{:.16e}\n", p.id, p.x, p.y));
    }
    s
}
