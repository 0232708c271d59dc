pub mod exactla;
pub mod polycone;
pub mod triang;
pub mod srring;
pub mod gseries;
pub mod gorcone;
