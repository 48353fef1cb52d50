// Generated by tecsoe. DO NOT EDIT.
use tecs_rt::{LockGuard, LockManager, TECSDummyExCtrlRef, TECSMutexRef, TECSSemaphoreRef, UnsafeCell};
use crate::kernel_cfg::*;

pub trait SSensor {
    fn set_device_ref(&self);
    fn get_distance(&self) -> i32;
}

pub struct TSensorVar {
    pub last: i32,
}

pub struct TSensorSyncVar {
    pub unsafe_var: UnsafeCell<TSensorVar>,
}

pub struct TSensor {
    pub var_ref: &'static TSensorSyncVar,
    pub ex_ctrl_ref: &'static TECSSemaphoreRef,
}

pub struct ESensorForTSensor {
    pub cell: &'static TSensor,
}

impl TSensor {
    #[inline]
    pub fn get_cell_ref(&'static self) -> (&'static TSensor, &'static mut TSensorVar, LockGuard) {
        let _lg = self.ex_ctrl_ref.lock();
        let var = unsafe { &mut *self.var_ref.unsafe_var.get() };
        (self, var, _lg)
    }
}
