use std::fmt;

use crate::Vendor;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineRole {
    /// Enters a configuration mode.
    Enter,
    /// Leaves the current mode.
    Exit,
    Command,
}

/// One generated command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScriptLine {
    pub text: String,
    pub role: LineRole,
    /// Session handling (`enable`, `configure terminal`, `save`, ...)
    /// rather than configuration.
    pub session: bool,
    /// Group value the line was generated from.
    pub owner: Option<String>,
    /// Configuration modes open around the line, session modes excluded.
    pub depth: usize,
}

/// A generated command script, one command per line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandScript {
    pub vendor: Vendor,
    pub lines: Vec<ScriptLine>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BalanceError {
    /// `exit` at this line index with no open mode.
    UnmatchedExit(usize),
    /// Modes still open at the end.
    Unclosed(usize),
    /// A mode opened at this line index while another configuration mode
    /// was still open.
    NestedMode(usize),
}

impl fmt::Display for BalanceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BalanceError::UnmatchedExit(i) => write!(f, "line {}: exit with no open mode", i + 1),
            BalanceError::Unclosed(n) => write!(f, "{n} mode(s) left open"),
            BalanceError::NestedMode(i) => write!(f, "line {}: mode opened before the previous one was closed", i + 1),
        }
    }
}

impl CommandScript {
    pub fn texts(&self) -> Vec<&str> {
        self.lines.iter().map(|l| l.text.as_str()).collect()
    }

    /// The script as typed at the device, LF-terminated.
    pub fn to_text(&self) -> String {
        self.lines.iter().map(|l| format!("{}\n", l.text)).collect()
    }

    /// The configuration as `show running-config` / `show config` would
    /// print it: session lines dropped, `exit` shown as `!`, mode bodies
    /// indented by one space.
    pub fn to_config_text(&self) -> String {
        let mut out = String::new();
        for l in self.lines.iter().filter(|l| !l.session) {
            match (self.vendor, l.role) {
                (Vendor::Cisco, LineRole::Exit) => out.push('!'),
                (Vendor::Yamaha, LineRole::Exit) => continue,
                _ => {
                    out.push_str(&" ".repeat(l.depth));
                    out.push_str(&l.text);
                }
            }
            out.push('\n');
        }
        out
    }

    /// Every mode entered is left by a matching `exit`, and no
    /// configuration mode opens while a sibling is still open.
    pub fn check_mode_balance(&self) -> Result<(), BalanceError> {
        let mut stack: Vec<bool> = Vec::new();
        for (i, l) in self.lines.iter().enumerate() {
            match l.role {
                LineRole::Enter => {
                    if !l.session && stack.iter().any(|session| !session) {
                        return Err(BalanceError::NestedMode(i));
                    }
                    stack.push(l.session);
                }
                LineRole::Exit => {
                    stack.pop().ok_or(BalanceError::UnmatchedExit(i))?;
                }
                LineRole::Command => {}
            }
        }
        if stack.is_empty() {
            Ok(())
        } else {
            Err(BalanceError::Unclosed(stack.len()))
        }
    }
}

impl fmt::Display for CommandScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(text: &str, role: LineRole, session: bool, depth: usize) -> ScriptLine {
        ScriptLine { text: text.into(), role, session, owner: None, depth }
    }

    fn script(lines: Vec<ScriptLine>) -> CommandScript {
        CommandScript { vendor: Vendor::Cisco, lines }
    }

    #[test]
    fn config_text_drops_session_lines() {
        let s = script(vec![
            line("enable", LineRole::Command, true, 0),
            line("configure terminal", LineRole::Enter, true, 0),
            line("interface vlan 10", LineRole::Enter, false, 0),
            line("no shutdown", LineRole::Command, false, 1),
            line("exit", LineRole::Exit, false, 0),
            line("hostname r", LineRole::Command, false, 0),
            line("exit", LineRole::Exit, true, 0),
        ]);
        assert_eq!(s.to_config_text(), "interface vlan 10\n no shutdown\n!\nhostname r\n");
        assert_eq!(s.check_mode_balance(), Ok(()));
    }

    #[test]
    fn balance_errors() {
        let enter = |t| line(t, LineRole::Enter, false, 0);
        let exit = || line("exit", LineRole::Exit, false, 0);
        assert_eq!(script(vec![exit()]).check_mode_balance(), Err(BalanceError::UnmatchedExit(0)));
        assert_eq!(script(vec![enter("vlan 1")]).check_mode_balance(), Err(BalanceError::Unclosed(1)));
        assert_eq!(
            script(vec![enter("vlan 1"), enter("vlan 2"), exit(), exit()]).check_mode_balance(),
            Err(BalanceError::NestedMode(1))
        );
    }
}
