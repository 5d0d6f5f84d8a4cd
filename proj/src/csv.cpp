#include "igdyn/csv.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace igdyn {

namespace {

struct File {
    std::FILE* f;
    explicit File(const std::string& path) : f(std::fopen(path.c_str(), "w")) {
        if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    }
    ~File() {
        if (f) std::fclose(f);
    }
    File(const File&) = delete;
    File& operator=(const File&) = delete;
};

void put(std::FILE* f, double v) { std::fprintf(f, ",%.17g", v); }

} // namespace

void write_trajectory_csv(const std::string& path, const GeodesicTrajectory& traj) {
    File out(path);
    std::fprintf(out.f, "tau");
    for (int k = 0; k < traj.dim; ++k) std::fprintf(out.f, ",theta_%d", k);
    for (int k = 0; k < traj.dim; ++k) std::fprintf(out.f, ",vel_%d", k);
    std::fprintf(out.f, "\n");
    for (const auto& st : traj.states) {
        std::fprintf(out.f, "%.17g", st.tau);
        for (int k = 0; k < traj.dim; ++k) put(out.f, st.theta[k]);
        for (int k = 0; k < traj.dim; ++k) put(out.f, st.velocity[k]);
        std::fprintf(out.f, "\n");
    }
}

void write_jacobi_csv(const std::string& path, const MetricField& model, const GeodesicTrajectory& host,
                      const JacobiField& jf) {
    const int d = host.dim;
    TrajectoryInterpolant interp(model, host);
    File out(path);
    std::fprintf(out.f, "tau");
    for (int k = 0; k < d; ++k) std::fprintf(out.f, ",theta_%d", k);
    for (int k = 0; k < d; ++k) std::fprintf(out.f, ",vel_%d", k);
    for (int k = 0; k < d; ++k) std::fprintf(out.f, ",J_%d", k);
    for (int k = 0; k < d; ++k) std::fprintf(out.f, ",DJ_%d", k);
    std::fprintf(out.f, ",intensity\n");
    for (std::size_t i = 0; i < jf.taus.size(); ++i) {
        const VectorXd th = interp.theta(jf.taus[i]);
        const VectorXd v = interp.velocity(jf.taus[i]);
        std::fprintf(out.f, "%.17g", jf.taus[i]);
        for (int k = 0; k < d; ++k) put(out.f, th[k]);
        for (int k = 0; k < d; ++k) put(out.f, v[k]);
        for (int k = 0; k < d; ++k) put(out.f, jf.J[i][k]);
        for (int k = 0; k < d; ++k) put(out.f, jf.DJ[i][k]);
        put(out.f, jf.intensity[i]);
        std::fprintf(out.f, "\n");
    }
}

void write_volume_csv(const std::string& path, std::span<const double> taus,
                      std::span<const double> delta_v, std::span<const double> avg_v) {
    File out(path);
    std::fprintf(out.f, "tau,delta_v,avg_v,entropy\n");
    for (std::size_t i = 0; i < taus.size(); ++i) {
        const double entropy = (avg_v[i] > 0.0) ? std::log(avg_v[i]) : -std::numeric_limits<double>::infinity();
        std::fprintf(out.f, "%.17g,%.17g,%.17g,%.17g\n", taus[i], delta_v[i], avg_v[i], entropy);
    }
}

} // namespace igdyn
