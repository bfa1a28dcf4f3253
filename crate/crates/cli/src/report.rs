//! The report envelope shared by every command: a deterministic JSON body
//! plus a plain-text rendering, with the exit-code contract
//! 0 = success, 1 = domain rejection, 2 = parse/usage error.

use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Rejected,
    UsageError,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Rejected => "rejected",
            Status::UsageError => "error",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Rejected => 1,
            Status::UsageError => 2,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Diagnostic {
    pub level: &'static str,
    pub code: String,
    pub message: String,
}

impl Diagnostic {
    pub fn error(code: &str, message: impl Into<String>) -> Diagnostic {
        Diagnostic { level: "error", code: code.into(), message: message.into() }
    }

    pub fn info(code: &str, message: impl Into<String>) -> Diagnostic {
        Diagnostic { level: "info", code: code.into(), message: message.into() }
    }
}

#[derive(Debug)]
pub struct Report {
    pub command: String,
    pub field: String,
    pub seed: u64,
    pub status: Status,
    pub result: Value,
    pub diagnostics: Vec<Diagnostic>,
    /// Plain-text lines for the human rendering.
    pub text: Vec<String>,
}

impl Report {
    pub fn new(command: &str, field: &str, seed: u64) -> Report {
        Report {
            command: command.to_string(),
            field: field.to_string(),
            seed,
            status: Status::Ok,
            result: Value::Null,
            diagnostics: Vec::new(),
            text: Vec::new(),
        }
    }

    pub fn reject(mut self, diag: Diagnostic) -> Report {
        self.status = Status::Rejected;
        self.text.push(format!("rejected: {}", diag.message));
        self.diagnostics.push(diag);
        self
    }

    pub fn usage_error(mut self, message: impl Into<String>) -> Report {
        let message = message.into();
        self.status = Status::UsageError;
        self.text.push(format!("error: {message}"));
        self.diagnostics.push(Diagnostic::error("parse", message));
        self
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "field": self.field,
            "seed": self.seed,
            "status": self.status.as_str(),
            "result": self.result,
            "diagnostics": self.diagnostics.iter().map(|d| json!({
                "level": d.level,
                "code": d.code,
                "message": d.message,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn render(&self, json_output: bool) -> String {
        if json_output {
            self.to_json().to_string()
        } else {
            let mut lines = vec![format!(
                "{} [{}] {}",
                self.command,
                self.field,
                self.status.as_str()
            )];
            lines.extend(self.text.iter().cloned());
            lines.join("\n")
        }
    }
}
