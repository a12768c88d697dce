use std::time::Duration;

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    Capped,
    NonClosing,
    Mismatch,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            _ => 2,
        }
    }

    pub fn of(ok: bool) -> Status {
        if ok {
            Status::Ok
        } else {
            Status::Mismatch
        }
    }
}

/// A command's result: a JSON payload object, the same data as rows of a
/// table (header first), and the overall status.
pub struct Output {
    pub payload: Value,
    pub table: Vec<Vec<String>>,
    pub status: Status,
}

impl Output {
    pub fn new(payload: impl Serialize, table: Vec<Vec<String>>, status: Status) -> Output {
        Output {
            payload: serde_json::to_value(payload).expect("report payloads serialize"),
            table,
            status,
        }
    }

    pub fn failure(status: Status, err: &bs_core::Error) -> Output {
        let msg = err.to_string();
        Output {
            payload: serde_json::json!({ "error": msg }),
            table: vec![vec!["error".into()], vec![msg]],
            status,
        }
    }

    pub fn to_json(&self, command: &str, elapsed: Option<Duration>) -> String {
        let mut obj = Map::new();
        obj.insert("command".into(), command.into());
        if let Value::Object(fields) = &self.payload {
            obj.extend(fields.clone());
        }
        obj.insert("status".into(), serde_json::to_value(self.status).unwrap());
        if let Some(d) = elapsed {
            obj.insert("elapsed_ms".into(), (d.as_millis() as u64).into());
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(obj)).unwrap();
        s.push('\n');
        s
    }

    pub fn to_tsv(&self) -> String {
        self.table
            .iter()
            .map(|row| row.join("\t") + "\n")
            .collect()
    }
}

/// Worst status of a collection, `Ok` when empty.
pub fn worst(statuses: impl IntoIterator<Item = Status>) -> Status {
    statuses.into_iter().max().unwrap_or(Status::Ok)
}

pub fn row<const N: usize>(cells: [&dyn std::fmt::Display; N]) -> Vec<String> {
    cells.iter().map(|c| c.to_string()).collect()
}

pub fn header(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worst_status_wins() {
        assert_eq!(worst([]), Status::Ok);
        assert_eq!(worst([Status::Ok, Status::NonClosing, Status::Capped]), Status::NonClosing);
        assert_eq!(Status::Mismatch.exit_code(), 2);
    }

    #[test]
    fn json_puts_command_first_and_status_last() {
        let out = Output::new(serde_json::json!({ "b": 1, "a": 2 }), vec![], Status::Ok);
        let text = out.to_json("x", None);
        let keys: Vec<&str> = text
            .lines()
            .filter_map(|l| l.trim().strip_prefix('"')?.split('"').next())
            .collect();
        assert_eq!(keys, ["command", "b", "a", "status"]);
    }
}
