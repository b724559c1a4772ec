#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "tetdec/comm.hpp"
#include "tetdec/complex.hpp"
#include "tetdec/errors.hpp"

namespace tetdec {

// Contiguous block partition of cell indices across ranks: every rank gets
// floor(n/p) cells and the first n mod p ranks get one extra, so block sizes
// differ by at most one and larger blocks sit at the lowest ranks.
struct PartitionPlan {
    int n_cells = 0;
    int n_ranks = 0;
    std::vector<std::pair<int, int>> ranges; // per rank, half-open [begin, end), 0-based

    int owner_of(int cell) const;
    std::vector<int> sizes() const;
};

// Throws ConfigError when n_ranks exceeds n_cells or either count is < 1.
PartitionPlan block_partition(int n_cells, int n_ranks);

// Three-row table (rank, cell count, 1-based inclusive index range per rank)
// for the prep command and partition diagnostics.
std::string partition_report(const PartitionPlan& plan);

// Ownership of the solver unknowns induced by a node partition: a tet belongs
// to the rank owning its lowest-numbered node (equivalently the minimum of
// its nodes' owners, since block ranges are ascending), and a face belongs to
// the lowest rank among its incident tets.
std::vector<int> tet_owners(const SimplicialComplex& cx, const PartitionPlan& plan);
std::vector<int> face_owners(const SimplicialComplex& cx, const std::vector<int>& tet_owner);

// One rank's view of the mesh: its owned tets plus ghost tets (off-rank tets
// sharing a face with an owned tet), rebuilt as a self-contained complex,
// with maps back to global indices and the schedules that refresh ghost
// values from their owners.
struct LocalSubcomplex {
    int rank = 0;
    SimplicialComplex cx;

    std::vector<int> global_nodes; // local node  -> global node
    std::vector<int> global_tets;  // local tet   -> global tet
    std::vector<int> global_faces; // local face  -> global face

    std::vector<int> tet_owner;   // per local tet
    std::vector<int> face_owner;  // per local face
    std::vector<char> tet_owned;  // owner == rank
    std::vector<char> face_owned; // owner == rank

    // Paired transfers with one peer: send[i] on the peer feeds recv[i] here
    // (both sides sort by global index, so positions agree).
    struct Exchange {
        int peer = -1;
        std::vector<int> send; // local indices of owned cells the peer needs
        std::vector<int> recv; // local indices of ghosts this rank needs
    };
    std::vector<Exchange> tet_halo;  // alpha-type values, one slot per local tet
    std::vector<Exchange> face_halo; // omega-type values, one slot per local face

    int owned_tet_count() const;
    int owned_face_count() const;
};

// Extracts the rank's subcomplex from the global complex. Every rank calls
// this with the same global data (the whole mesh is readable everywhere at
// this scale), so schedules come out consistent without negotiation.
LocalSubcomplex build_local(const SimplicialComplex& cx, const PartitionPlan& plan, int rank);

// Refreshes ghost entries of a per-local-cell vector from the owning ranks.
// Owned entries are never touched. Collective across ranks: every rank must
// call the matching function in the same sequence.
void halo_exchange_tets(Eigen::VectorXd& values, const LocalSubcomplex& local,
                        Communicator& comm);
void halo_exchange_faces(Eigen::VectorXd& values, const LocalSubcomplex& local,
                         Communicator& comm);

} // namespace tetdec
