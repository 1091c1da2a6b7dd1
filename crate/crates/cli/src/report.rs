use std::fmt::Write as _;
use std::io::IsTerminal;

use serde_json::{Map, Value};

/// What a subcommand produced: a JSON object, its text rendering, and
/// whether every check passed.
pub struct Report {
    pub json: Map<String, Value>,
    pub text: String,
    pub ok: bool,
    /// A reloadable JSON document for `--out`, when the command builds one.
    pub artifact: Option<String>,
    style: bool,
}

impl Report {
    pub fn new() -> Report {
        let mut json = Map::new();
        json.insert("schema_version".into(), Value::from(1));
        let style =
            std::env::var_os("MACKEYKIT_NO_COLOR").is_none() && std::io::stdout().is_terminal();
        Report {
            json,
            text: String::new(),
            ok: true,
            artifact: None,
            style,
        }
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.json.insert(key.into(), v.into());
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    pub fn heading(&mut self, s: &str) {
        if self.style {
            self.line(format!("\x1b[1m{s}\x1b[0m"));
        } else {
            self.line(s);
        }
    }

    /// Records a named check; failures flip the exit status.
    pub fn check(&mut self, name: &str, passed: bool, detail: Option<String>) {
        self.ok &= passed;
        let mark = match (passed, self.style) {
            (true, true) => "\x1b[32mpass\x1b[0m",
            (false, true) => "\x1b[31mFAIL\x1b[0m",
            (true, false) => "pass",
            (false, false) => "FAIL",
        };
        match &detail {
            Some(d) => self.line(format!("{mark}  {name}: {d}")),
            None => self.line(format!("{mark}  {name}")),
        }
        let checks = self
            .json
            .entry("checks")
            .or_insert_with(|| Value::Array(Vec::new()))
            .as_array_mut()
            .expect("checks is an array");
        let mut c = Map::new();
        c.insert("name".into(), name.into());
        c.insert("passed".into(), passed.into());
        if let Some(d) = detail {
            c.insert("detail".into(), d.into());
        }
        checks.push(Value::Object(c));
    }

    pub fn table(&mut self, header: &[&str], rows: &[Vec<String>]) {
        let n = header.len();
        let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
        for r in rows {
            for (w, cell) in width.iter_mut().zip(r) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let render = |cells: Vec<&str>| {
            let mut s = String::new();
            for (i, c) in cells.iter().enumerate() {
                if i + 1 < n {
                    let _ = write!(s, "{c:<w$}  ", w = width[i]);
                } else {
                    s.push_str(c);
                }
            }
            s.trim_end().to_string()
        };
        let h = render(header.to_vec());
        self.heading(&h);
        for r in rows {
            self.line(render(r.iter().map(String::as_str).collect()));
        }
    }
}

pub fn fmt_ints<T: std::fmt::Display>(v: &[T]) -> String {
    let inner: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", inner.join(", "))
}

pub fn fmt_matrix<T: std::fmt::Display>(rows: &[Vec<T>]) -> String {
    let inner: Vec<String> = rows.iter().map(|r| fmt_ints(r)).collect();
    format!("[{}]", inner.join(", "))
}

/// `Z/2 + Z` style rendering of invariant factors.
pub fn fmt_group(inv: &[mackeykit::Int]) -> String {
    let mut parts: Vec<String> = inv
        .iter()
        .filter(|d| !d.is_zero())
        .map(|d| format!("Z/{d}"))
        .collect();
    match inv.iter().filter(|d| d.is_zero()).count() {
        0 => {}
        1 => parts.push("Z".into()),
        r => parts.push(format!("Z^{r}")),
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}
