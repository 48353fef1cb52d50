// Entry port functions for celltype tMotor, entry eMotor.
use crate::gen::*;

impl SMotor for EMotorForTMotor {
    fn set_speed(&self, speed: i32) {
        let (port, var, _lg) = self.cell.get_cell_ref();
        // Developers implement the component behavior here.
        let _ = (port, var);
    }

    fn stop(&self) {
        let (port, var, _lg) = self.cell.get_cell_ref();
        // Developers implement the component behavior here.
        let _ = (port, var);
    }
}
