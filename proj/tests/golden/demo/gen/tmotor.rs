// Generated by tecsoe. DO NOT EDIT.
use tecs_rt::{LockGuard, LockManager, TECSDummyExCtrlRef, TECSMutexRef, TECSSemaphoreRef, UnsafeCell};
use crate::kernel_cfg::*;

pub trait SMotor {
    fn set_speed(&self, speed: i32);
    fn stop(&self);
}

pub struct TMotorVar {
    pub speed: i32,
}

pub struct TMotorSyncVar {
    pub unsafe_var: UnsafeCell<TMotorVar>,
}

pub struct TMotor {
    pub var_ref: &'static TMotorSyncVar,
}

pub struct EMotorForTMotor {
    pub cell: &'static TMotor,
}

impl TMotor {
    #[inline]
    pub fn get_cell_ref(&'static self) -> (&'static TMotor, &'static mut TMotorVar, LockGuard) {
        let _lg = LockGuard::none();
        let var = unsafe { &mut *self.var_ref.unsafe_var.get() };
        (self, var, _lg)
    }
}
