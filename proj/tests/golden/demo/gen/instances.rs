// Generated by tecsoe. DO NOT EDIT.
use tecs_rt::{LockGuard, LockManager, TECSDummyExCtrlRef, TECSMutexRef, TECSSemaphoreRef, UnsafeCell};
use crate::kernel_cfg::*;

pub static CTRL1: TCtrl = TCtrl {
    cSensor: &SENSOR1_ESENSOR,
    cMotor: &MOTOR1_EMOTOR,
    cLog: &LOG1_ELOG,
};
pub static CTRL1_EBODY: EBodyForTCtrl = EBodyForTCtrl { cell: &CTRL1 };

pub static LOG1_VAR: TLoggerSyncVar = TLoggerSyncVar {
    unsafe_var: UnsafeCell::new(TLoggerVar { buf: 0 }),
};
pub static LOG1: TLogger = TLogger {
    var_ref: &LOG1_VAR,
};
pub static LOG1_ELOG: ELogForTLogger = ELogForTLogger { cell: &LOG1 };

pub static MOTOR1_VAR: TMotorSyncVar = TMotorSyncVar {
    unsafe_var: UnsafeCell::new(TMotorVar { speed: 0 }),
};
pub static MOTOR1: TMotor = TMotor {
    var_ref: &MOTOR1_VAR,
};
pub static MOTOR1_EMOTOR: EMotorForTMotor = EMotorForTMotor { cell: &MOTOR1 };

pub static SENSOR1_EXC: TECSSemaphoreRef = TECSSemaphoreRef::new(SEM_SENSOR1);
pub static SENSOR1_VAR: TSensorSyncVar = TSensorSyncVar {
    unsafe_var: UnsafeCell::new(TSensorVar { last: 0 }),
};
pub static SENSOR1: TSensor = TSensor {
    var_ref: &SENSOR1_VAR,
    ex_ctrl_ref: &SENSOR1_EXC,
};
pub static SENSOR1_ESENSOR: ESensorForTSensor = ESensorForTSensor { cell: &SENSOR1 };

