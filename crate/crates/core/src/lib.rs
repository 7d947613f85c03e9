pub mod exactlin;
pub mod polyring;
pub mod report;
pub mod sheafdim;
pub mod eulercalc;
pub mod defcomplex;
pub mod higgsfields;
pub mod sampling;
pub mod schwarz;
pub mod verify;
