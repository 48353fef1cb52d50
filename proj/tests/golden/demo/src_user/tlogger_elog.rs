// Entry port functions for celltype tLogger, entry eLog.
use crate::gen::*;

impl SLog for ELogForTLogger {
    fn put(&self, value: i32) {
        let (port, var, _lg) = self.cell.get_cell_ref();
        // Developers implement the component behavior here.
        let _ = (port, var);
    }
}
