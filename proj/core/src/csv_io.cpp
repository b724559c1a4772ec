#include "tetdec/csv_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "tetdec/errors.hpp"

namespace tetdec {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void append_rows(std::ostringstream& out, const CrackState& state, const std::string& prefix) {
    const double n_int = state.n_interior_faces > 0 ? state.n_interior_faces : 1;
    for (std::size_t k = 0; k < state.kappa_e_history.size(); ++k) {
        int face = k == 0 ? -1 : state.cracked[k - 1];
        out << prefix << k << ',' << face << ',' << fmt(double(k) / n_int) << ','
            << fmt(state.kappa_e_history[k]) << '\n';
    }
}

void append_notes(std::ostringstream& out, const CrackState& state, const std::string& label) {
    if (!state.completed) out << "# " << label << "aborted: " << state.note << '\n';
    else if (!state.note.empty()) out << "# " << label << "note: " << state.note << '\n';
}

void write_text(const std::string& text, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw MeshError("cannot open for writing: " + path);
    out << text;
    if (!out) throw MeshError("write failed: " + path);
}

} // namespace

std::string csv_history_text(const CrackState& state) {
    std::ostringstream out;
    if (state.stochastic)
        out << "# rng=" << kRngAlgorithm << " seed=" << state.rng_seed << '\n';
    else
        out << "# selection=max-flux (deterministic)\n";
    out << "# interior_faces=" << state.n_interior_faces << '\n';
    append_notes(out, state, "");
    out << "step,cracked_face_id,D_n,kappa_e\n";
    append_rows(out, state, "");
    return out.str();
}

std::string csv_monte_carlo_text(const std::vector<CrackState>& paths) {
    std::ostringstream out;
    out << "# rng=" << kRngAlgorithm << " paths=" << paths.size() << '\n';
    if (!paths.empty()) out << "# interior_faces=" << paths.front().n_interior_faces << '\n';
    for (std::size_t i = 0; i < paths.size(); ++i)
        append_notes(out, paths[i], "path " + std::to_string(i) + " ");
    out << "path,seed,step,cracked_face_id,D_n,kappa_e\n";
    for (std::size_t i = 0; i < paths.size(); ++i) {
        std::ostringstream prefix;
        prefix << i << ',' << paths[i].rng_seed << ',';
        append_rows(out, paths[i], prefix.str());
    }
    return out.str();
}

std::string csv_convergence_text(const std::vector<ConvergenceRow>& rows) {
    std::ostringstream out;
    out << "level,max_tet_volume,rms_error,limited_fraction\n";
    for (const ConvergenceRow& r : rows)
        out << r.level << ',' << fmt(r.max_tet_volume) << ',' << fmt(r.rms_error) << ','
            << fmt(r.limited_fraction) << '\n';
    return out.str();
}

void write_csv_history(const CrackState& state, const std::string& path) {
    write_text(csv_history_text(state), path);
}

void write_csv_monte_carlo(const std::vector<CrackState>& paths, const std::string& path) {
    write_text(csv_monte_carlo_text(paths), path);
}

void write_csv_convergence(const std::vector<ConvergenceRow>& rows, const std::string& path) {
    write_text(csv_convergence_text(rows), path);
}

} // namespace tetdec
