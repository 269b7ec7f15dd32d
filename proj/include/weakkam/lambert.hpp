#pragma once

/// @file lambert.hpp
/// @brief Principal real branch of the Lambert W function.
///
/// W(z) is the unique w >= 0 with w e^w = z for z >= 0. The level curves of
/// the modified Hamiltonian need W at arguments of the form e^y with y as large
/// as 1e6, so an overflow-safe variant parametrised by y = ln z is provided.

namespace weakkam::lambert {

/// W(z) for z >= 0. Throws DomainError for negative or non-finite z.
double w_principal(double z);

/// W(e^y), i.e. the unique w > 0 with w + ln w = y. Never forms e^y for
/// large y. Throws DomainError for non-finite y.
double w_log(double y);

/// ln W(e^y), finite for every finite y (falls back to y - W(e^y) when W
/// underflows).
double log_w_log(double y);

/// W'(z) = 1 / ((1 + W(z)) e^{W(z)}) for z > 0.
double w_prime(double z);

}  // namespace weakkam::lambert
