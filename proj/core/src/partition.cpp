#include "tetdec/partition.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace tetdec {

int PartitionPlan::owner_of(int cell) const {
    if (cell < 0 || cell >= n_cells)
        throw ConfigError("cell index out of range: " + std::to_string(cell));
    const int base = n_cells / n_ranks;
    const int extra = n_cells % n_ranks;
    const int big_block = extra * (base + 1);
    if (cell < big_block) return cell / (base + 1);
    return extra + (cell - big_block) / base;
}

std::vector<int> PartitionPlan::sizes() const {
    std::vector<int> out;
    out.reserve(ranges.size());
    for (const auto& [begin, end] : ranges) out.push_back(end - begin);
    return out;
}

PartitionPlan block_partition(int n_cells, int n_ranks) {
    if (n_ranks < 1) throw ConfigError("rank count must be at least 1");
    if (n_cells < n_ranks)
        throw ConfigError("cannot partition " + std::to_string(n_cells) + " cells across " +
                          std::to_string(n_ranks) + " ranks");
    PartitionPlan plan;
    plan.n_cells = n_cells;
    plan.n_ranks = n_ranks;
    const int base = n_cells / n_ranks;
    const int extra = n_cells % n_ranks;
    int begin = 0;
    for (int r = 0; r < n_ranks; ++r) {
        int size = base + (r < extra ? 1 : 0);
        plan.ranges.emplace_back(begin, begin + size);
        begin += size;
    }
    return plan;
}

std::string partition_report(const PartitionPlan& plan) {
    std::vector<std::string> rank_row, count_row, range_row;
    for (int r = 0; r < plan.n_ranks; ++r) {
        const auto& [begin, end] = plan.ranges[r];
        rank_row.push_back(std::to_string(r));
        count_row.push_back(std::to_string(end - begin));
        range_row.push_back(std::to_string(begin + 1) + "-" + std::to_string(end));
    }

    const std::array<std::string, 3> labels = {"rank", "local cells", "cell indices"};
    const std::array<const std::vector<std::string>*, 3> rows = {&rank_row, &count_row,
                                                                 &range_row};
    std::size_t label_width = 0;
    for (const auto& l : labels) label_width = std::max(label_width, l.size());
    std::vector<std::size_t> widths(static_cast<std::size_t>(plan.n_ranks), 0);
    for (const auto* row : rows)
        for (int r = 0; r < plan.n_ranks; ++r)
            widths[r] = std::max(widths[r], (*row)[r].size());

    std::ostringstream out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out << labels[i] << std::string(label_width - labels[i].size(), ' ');
        for (int r = 0; r < plan.n_ranks; ++r) {
            const std::string& cell = (*rows[i])[r];
            out << "  " << std::string(widths[r] - cell.size(), ' ') << cell;
        }
        out << "\n";
    }
    return out.str();
}

std::vector<int> tet_owners(const SimplicialComplex& cx, const PartitionPlan& plan) {
    if (plan.n_cells != static_cast<int>(cx.cell_count(0)))
        throw ConfigError("partition plan covers " + std::to_string(plan.n_cells) +
                          " cells but the mesh has " + std::to_string(cx.cell_count(0)) +
                          " nodes");
    std::vector<int> owner(cx.cell_count(3));
    // Block ranges ascend with node index, so the lowest node determines the
    // minimum owner over the tet's nodes.
    for (std::size_t t = 0; t < owner.size(); ++t) owner[t] = plan.owner_of(cx.tets[t][0]);
    return owner;
}

std::vector<int> face_owners(const SimplicialComplex& cx, const std::vector<int>& tet_owner) {
    std::vector<int> owner(cx.cell_count(2));
    for (std::size_t f = 0; f < owner.size(); ++f) {
        const auto& [t0, t1] = cx.face_tets[f];
        owner[f] = tet_owner[t0];
        if (t1 != -1) owner[f] = std::min(owner[f], tet_owner[t1]);
    }
    return owner;
}

int LocalSubcomplex::owned_tet_count() const {
    return static_cast<int>(std::count(tet_owned.begin(), tet_owned.end(), 1));
}

int LocalSubcomplex::owned_face_count() const {
    return static_cast<int>(std::count(face_owned.begin(), face_owned.end(), 1));
}

namespace {

int global_tet_index(const SimplicialComplex& cx, const std::array<int, 4>& tuple) {
    auto it = std::lower_bound(cx.tets.begin(), cx.tets.end(), tuple);
    if (it == cx.tets.end() || *it != tuple) throw MeshError("tet lookup failed");
    return static_cast<int>(it - cx.tets.begin());
}

// Grouped, globally ordered transfer lists. `mine` maps global -> local on
// this rank; peers see the same global ordering, so positions pair up.
std::vector<LocalSubcomplex::Exchange>
build_schedule(const std::map<int, std::set<int>>& send_global,
               const std::map<int, std::set<int>>& recv_global,
               const std::map<int, int>& global_to_local) {
    std::set<int> peers;
    for (const auto& [p, s] : send_global)
        if (!s.empty()) peers.insert(p);
    for (const auto& [p, s] : recv_global)
        if (!s.empty()) peers.insert(p);

    std::vector<LocalSubcomplex::Exchange> schedule;
    for (int p : peers) {
        LocalSubcomplex::Exchange ex;
        ex.peer = p;
        if (auto it = send_global.find(p); it != send_global.end())
            for (int g : it->second) ex.send.push_back(global_to_local.at(g));
        if (auto it = recv_global.find(p); it != recv_global.end())
            for (int g : it->second) ex.recv.push_back(global_to_local.at(g));
        schedule.push_back(std::move(ex));
    }
    return schedule;
}

} // namespace

LocalSubcomplex build_local(const SimplicialComplex& cx, const PartitionPlan& plan, int rank) {
    if (rank < 0 || rank >= plan.n_ranks)
        throw ConfigError("rank out of range: " + std::to_string(rank));

    const std::vector<int> owner_of_tet = tet_owners(cx, plan);
    const std::vector<int> owner_of_face = face_owners(cx, owner_of_tet);
    const int n_tets = static_cast<int>(cx.cell_count(3));

    auto other_tet = [&](int face, int tet) {
        const auto& [t0, t1] = cx.face_tets[face];
        return t0 == tet ? t1 : t0;
    };

    std::set<int> local_tets_global;
    for (int t = 0; t < n_tets; ++t)
        if (owner_of_tet[t] == rank) local_tets_global.insert(t);
    std::set<int> ghosts;
    for (int t : local_tets_global) {
        for (Eigen::SparseMatrix<int>::InnerIterator it(cx.boundary3, t); it; ++it) {
            int n = other_tet(static_cast<int>(it.row()), t);
            if (n != -1 && owner_of_tet[n] != rank) ghosts.insert(n);
        }
    }
    for (int t : ghosts) local_tets_global.insert(t);

    LocalSubcomplex local;
    local.rank = rank;
    local.global_tets.assign(local_tets_global.begin(), local_tets_global.end());

    std::set<int> nodes;
    for (int t : local.global_tets)
        for (int v : cx.tets[t]) nodes.insert(v);
    local.global_nodes.assign(nodes.begin(), nodes.end());
    std::map<int, int> node_local;
    for (std::size_t i = 0; i < local.global_nodes.size(); ++i)
        node_local[local.global_nodes[i]] = static_cast<int>(i);

    std::set<int> local_faces_global;
    for (int t : local.global_tets)
        for (Eigen::SparseMatrix<int>::InnerIterator it(cx.boundary3, t); it; ++it)
            local_faces_global.insert(static_cast<int>(it.row()));

    RawMesh mesh;
    mesh.nodes.reserve(local.global_nodes.size());
    for (int v : local.global_nodes) mesh.nodes.push_back(cx.positions[v]);
    mesh.tets.reserve(local.global_tets.size());
    for (int t : local.global_tets) {
        const auto& tv = cx.tets[t];
        mesh.tets.push_back(
            {node_local[tv[0]], node_local[tv[1]], node_local[tv[2]], node_local[tv[3]]});
    }
    for (int f : local_faces_global) {
        if (cx.face_markers[f] == 0) continue;
        const auto& fv = cx.faces[f];
        mesh.boundary_faces.push_back({node_local[fv[0]], node_local[fv[1]], node_local[fv[2]]});
        mesh.face_markers.push_back(cx.face_markers[f]);
    }
    local.cx = build_complex(mesh);

    local.global_faces.resize(local.cx.cell_count(2));
    for (std::size_t lf = 0; lf < local.cx.cell_count(2); ++lf) {
        const auto& fv = local.cx.faces[lf];
        local.global_faces[lf] = cx.face_index(
            {local.global_nodes[fv[0]], local.global_nodes[fv[1]], local.global_nodes[fv[2]]});
    }
    std::map<int, int> tet_local, face_local;
    local.global_tets.clear();
    local.global_tets.resize(local.cx.cell_count(3));
    for (std::size_t lt = 0; lt < local.cx.cell_count(3); ++lt) {
        const auto& tv = local.cx.tets[lt];
        local.global_tets[lt] = global_tet_index(
            cx, {local.global_nodes[tv[0]], local.global_nodes[tv[1]], local.global_nodes[tv[2]],
                 local.global_nodes[tv[3]]});
        tet_local[local.global_tets[lt]] = static_cast<int>(lt);
    }
    for (std::size_t lf = 0; lf < local.global_faces.size(); ++lf)
        face_local[local.global_faces[lf]] = static_cast<int>(lf);

    local.tet_owner.resize(local.global_tets.size());
    local.tet_owned.resize(local.global_tets.size());
    for (std::size_t lt = 0; lt < local.global_tets.size(); ++lt) {
        local.tet_owner[lt] = owner_of_tet[local.global_tets[lt]];
        local.tet_owned[lt] = local.tet_owner[lt] == rank;
    }
    local.face_owner.resize(local.global_faces.size());
    local.face_owned.resize(local.global_faces.size());
    for (std::size_t lf = 0; lf < local.global_faces.size(); ++lf) {
        local.face_owner[lf] = owner_of_face[local.global_faces[lf]];
        local.face_owned[lf] = local.face_owner[lf] == rank;
    }

    // Tet halo: receive every ghost from its owner; send an owned tet to each
    // rank whose owned tets touch it through a face.
    std::map<int, std::set<int>> tet_send, tet_recv;
    for (int t : ghosts) tet_recv[owner_of_tet[t]].insert(t);
    for (std::size_t lt = 0; lt < local.global_tets.size(); ++lt) {
        if (!local.tet_owned[lt]) continue;
        int gt = local.global_tets[lt];
        for (Eigen::SparseMatrix<int>::InnerIterator it(cx.boundary3, gt); it; ++it) {
            int n = other_tet(static_cast<int>(it.row()), gt);
            if (n != -1 && owner_of_tet[n] != rank) tet_send[owner_of_tet[n]].insert(gt);
        }
    }
    local.tet_halo = build_schedule(tet_send, tet_recv, tet_local);

    // Face halo: an owned tet's faces may be owned by a lower rank (receive
    // them), and an owned face may sit under another rank's tet (send it).
    std::map<int, std::set<int>> face_send, face_recv;
    for (std::size_t lf = 0; lf < local.global_faces.size(); ++lf) {
        int gf = local.global_faces[lf];
        const auto& [t0, t1] = cx.face_tets[gf];
        bool under_owned_tet = (owner_of_tet[t0] == rank) || (t1 != -1 && owner_of_tet[t1] == rank);
        if (local.face_owned[lf]) {
            for (int t : {t0, t1})
                if (t != -1 && owner_of_tet[t] != rank) face_send[owner_of_tet[t]].insert(gf);
        } else if (under_owned_tet) {
            face_recv[local.face_owner[lf]].insert(gf);
        }
    }
    local.face_halo = build_schedule(face_send, face_recv, face_local);
    return local;
}

namespace {

void run_exchange(Eigen::VectorXd& values, const std::vector<LocalSubcomplex::Exchange>& halo,
                  int rank, Communicator& comm) {
    for (const auto& ex : halo) {
        std::vector<double> buffer(ex.send.size());
        for (std::size_t i = 0; i < ex.send.size(); ++i) buffer[i] = values[ex.send[i]];
        comm.send(rank, ex.peer, std::move(buffer));
    }
    for (const auto& ex : halo) {
        std::vector<double> buffer = comm.recv(rank, ex.peer);
        if (buffer.size() != ex.recv.size())
            throw SolverError("halo exchange schedule mismatch with rank " +
                              std::to_string(ex.peer));
        for (std::size_t i = 0; i < ex.recv.size(); ++i) values[ex.recv[i]] = buffer[i];
    }
}

} // namespace

void halo_exchange_tets(Eigen::VectorXd& values, const LocalSubcomplex& local,
                        Communicator& comm) {
    if (values.size() != static_cast<Eigen::Index>(local.cx.cell_count(3)))
        throw SolverError("tet halo exchange on a vector of the wrong length");
    run_exchange(values, local.tet_halo, local.rank, comm);
}

void halo_exchange_faces(Eigen::VectorXd& values, const LocalSubcomplex& local,
                         Communicator& comm) {
    if (values.size() != static_cast<Eigen::Index>(local.cx.cell_count(2)))
        throw SolverError("face halo exchange on a vector of the wrong length");
    run_exchange(values, local.face_halo, local.rank, comm);
}

} // namespace tetdec
