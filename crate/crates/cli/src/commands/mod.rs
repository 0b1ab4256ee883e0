pub mod classify;
pub mod construct;
pub mod dual;
pub mod sweep;
pub mod table;
pub mod verify;

/// Outcome of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A check the command performs did not hold.
    Failed,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Ok
        } else {
            Status::Failed
        }
    }
}
