//! Line-delimited JSON trace records.

use std::fmt::Display;

use serde::{Deserialize, Serialize};

use crate::tree::{Position, TraceStep};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceLine {
    pub step_index: usize,
    pub rule: String,
    pub position: String,
    pub after: String,
}

impl TraceLine {
    pub fn new(step_index: usize, rule: &str, pos: &Position, after: &impl Display) -> Self {
        TraceLine { step_index, rule: rule.to_string(), position: pos.to_string(), after: after.to_string() }
    }

    pub fn from_step<E: Display, R>(step: &TraceStep<E, R>, rule_name: impl Fn(&R) -> String) -> Self {
        TraceLine {
            step_index: step.step_index,
            rule: rule_name(&step.rule),
            position: step.pos.to_string(),
            after: step.after.to_string(),
        }
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("trace lines always serialize")
    }

    pub fn parse_line(line: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(line)
    }

    pub fn pos(&self) -> Result<Position, std::num::ParseIntError> {
        self.position.parse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let line = TraceLine::new(3, "m6", &Position(vec![0, 1, 0]), &"c:a");
        let text = line.to_line();
        assert_eq!(text, r#"{"step_index":3,"rule":"m6","position":"0/1/0","after":"c:a"}"#);
        assert_eq!(TraceLine::parse_line(&text).unwrap(), line);
        assert_eq!(line.pos().unwrap(), Position(vec![0, 1, 0]));
    }
}
