use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::CliError;

#[derive(Clone, Debug, Serialize)]
pub struct Assertion {
    pub label: String,
    pub lhs: f64,
    pub relation: &'static str,
    pub rhs: f64,
    pub pass: bool,
}

impl Assertion {
    pub fn le(label: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        Assertion { label: label.into(), lhs, relation: "<=", rhs, pass: lhs <= rhs }
    }

    pub fn eq(label: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        Assertion { label: label.into(), lhs, relation: "==", rhs, pass: lhs == rhs }
    }

    pub fn holds(label: impl Into<String>, pass: bool) -> Self {
        let v = if pass { 1.0 } else { 0.0 };
        Assertion { label: label.into(), lhs: v, relation: "==", rhs: 1.0, pass }
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub diagnostics: Value,
    pub assertions: Vec<Assertion>,
    #[serde(skip)]
    pub tables: Vec<(String, String)>,
    /// Set when an estimate stopped at its radius cap before converging.
    #[serde(skip)]
    pub budget: Option<String>,
}

impl Report {
    pub fn new(command: &str, inputs: Value) -> Self {
        Report {
            command: command.into(),
            inputs,
            results: Value::Null,
            diagnostics: Value::Null,
            assertions: Vec::new(),
            tables: Vec::new(),
            budget: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Prints the report and, given a directory, writes it there along with
    /// its CSV tables.
    pub fn emit(&self, name: &str, out: Option<&Path>) -> Result<(), CliError> {
        let json = self.to_json();
        match out {
            Some(dir) => {
                std::fs::create_dir_all(dir)?;
                std::fs::write(dir.join(format!("{name}.json")), &json)?;
                for (file, csv) in &self.tables {
                    std::fs::write(dir.join(file), csv)?;
                }
                for a in &self.assertions {
                    println!("[{}] {}", if a.pass { "PASS" } else { "FAIL" }, a.label);
                }
                println!("report written to {}", dir.join(format!("{name}.json")).display());
            }
            None => println!("{json}"),
        }
        Ok(())
    }
}
