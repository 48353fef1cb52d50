// Generated by tecsoe. DO NOT EDIT.
use tecs_rt::{LockGuard, LockManager, TECSDummyExCtrlRef, TECSMutexRef, TECSSemaphoreRef, UnsafeCell};
use crate::kernel_cfg::*;

pub trait SLog {
    fn put(&self, value: i32);
}

pub struct TLoggerVar {
    pub buf: i32,
}

pub struct TLoggerSyncVar {
    pub unsafe_var: UnsafeCell<TLoggerVar>,
}

pub struct TLogger {
    pub var_ref: &'static TLoggerSyncVar,
}

pub struct ELogForTLogger {
    pub cell: &'static TLogger,
}

impl TLogger {
    #[inline]
    pub fn get_cell_ref(&'static self) -> (&'static TLogger, &'static mut TLoggerVar, LockGuard) {
        let _lg = LockGuard::none();
        let var = unsafe { &mut *self.var_ref.unsafe_var.get() };
        (self, var, _lg)
    }
}
