//! CSV rendering. Each rational gets a decimal column for plotting and an
//! exact `p/q` column that parses back losslessly.

use mgnet::rational::{to_decimal, to_fraction};
use mgnet::{parse_q, MgError, MgPoint, Q};

use crate::figures::Figure;

pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table { headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
    }
}

pub fn dec(v: &Q) -> String {
    to_decimal(v)
}

pub fn exact(v: &Q) -> String {
    to_fraction(v)
}

fn opt_exact(v: &Option<Q>) -> String {
    v.as_ref().map(exact).unwrap_or_default()
}

/// Polyline rows `point,s_f,s_s,s_f_exact,s_s_exact`.
pub fn polyline_csv(points: &[MgPoint]) -> String {
    let mut t = Table::new(&["point", "s_f", "s_s", "s_f_exact", "s_s_exact"]);
    for (i, p) in points.iter().enumerate() {
        t.push(vec![i.to_string(), dec(&p.s_f), dec(&p.s_s), exact(&p.s_f), exact(&p.s_s)]);
    }
    t.render()
}

pub fn figure_csv(f: &Figure) -> String {
    let mut t =
        Table::new(&["figure", "curve", "color", "mu_tx", "mu_rx", "point", "s_f", "s_s", "s_f_exact", "s_s_exact"]);
    for c in &f.curves {
        for (i, p) in c.points.iter().enumerate() {
            t.push(vec![
                f.figure.name().into(),
                c.id.clone(),
                c.color.into(),
                opt_exact(&c.mu_tx),
                opt_exact(&c.mu_rx),
                i.to_string(),
                dec(&p.s_f),
                dec(&p.s_s),
                exact(&p.s_f),
                exact(&p.s_s),
            ]);
        }
    }
    t.render()
}

fn column(headers: &csv::StringRecord, name: &str) -> Result<usize, MgError> {
    headers.iter().position(|h| h == name).ok_or_else(|| MgError::Parse(format!("missing column `{name}`")))
}

fn read_points(text: &str, group: Option<&str>) -> Result<Vec<(String, MgPoint)>, MgError> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let headers = r.headers().map_err(|e| MgError::Parse(e.to_string()))?.clone();
    let (f, s) = (column(&headers, "s_f_exact")?, column(&headers, "s_s_exact")?);
    let g = group.map(|name| column(&headers, name)).transpose()?;
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(|e| MgError::Parse(e.to_string()))?;
        let key = g.map(|i| rec[i].to_string()).unwrap_or_default();
        out.push((key, MgPoint::new(parse_q(&rec[f])?, parse_q(&rec[s])?)));
    }
    Ok(out)
}

pub fn parse_polyline_csv(text: &str) -> Result<Vec<MgPoint>, MgError> {
    Ok(read_points(text, None)?.into_iter().map(|(_, p)| p).collect())
}

/// Curves of a figure CSV in file order.
pub fn parse_figure_csv(text: &str) -> Result<Vec<(String, Vec<MgPoint>)>, MgError> {
    let mut out: Vec<(String, Vec<MgPoint>)> = Vec::new();
    for (id, p) in read_points(text, Some("curve"))? {
        match out.last_mut() {
            Some((last, pts)) if *last == id => pts.push(p),
            _ => out.push((id, vec![p])),
        }
    }
    Ok(out)
}
