#pragma once

#include <span>
#include <string>

#include "igdyn/dynamics.hpp"

namespace igdyn {

/// Header: tau,theta_0..theta_{d-1},vel_0..vel_{d-1}
void write_trajectory_csv(const std::string& path, const GeodesicTrajectory& traj);

/// Header: tau,theta_*,vel_*,J_*,DJ_*,intensity (host states interpolated at
/// the Jacobi sample times).
void write_jacobi_csv(const std::string& path, const MetricField& model, const GeodesicTrajectory& host,
                      const JacobiField& jf);

/// Header: tau,delta_v,avg_v,entropy
void write_volume_csv(const std::string& path, std::span<const double> taus,
                      std::span<const double> delta_v, std::span<const double> avg_v);

} // namespace igdyn
