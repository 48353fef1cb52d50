// Generated by tecsoe. DO NOT EDIT.
use tecs_rt::{LockGuard, LockManager, TECSDummyExCtrlRef, TECSMutexRef, TECSSemaphoreRef, UnsafeCell};
use crate::kernel_cfg::*;

pub trait SBody {
    fn run(&self);
}

pub struct TCtrl {
    pub cSensor: &'static dyn SSensor,
    pub cMotor: &'static dyn SMotor,
    pub cLog: &'static dyn SLog,
}

pub struct EBodyForTCtrl {
    pub cell: &'static TCtrl,
}

impl TCtrl {
    #[inline]
    pub fn get_cell_ref(&'static self) -> (&'static TCtrl, (), LockGuard) {
        let _lg = LockGuard::none();
        (self, (), _lg)
    }
}
