#ifndef UACSP_WORKSPACE_HPP
#define UACSP_WORKSPACE_HPP

#include <iosfwd>
#include <string>

#include "instance.hpp"

namespace uacsp {

/** A parsed workspace file: named algebras and instances over them.
 *  All invariance and idempotence checks run at load time; failures raise
 *  input_error with a location. */
struct Workspace {
    std::vector<AlgebraPtr> algebras;
    std::vector<Instance> instances;

    const AlgebraPtr& algebra(const std::string& id) const;
};

Workspace load_workspace_text(const std::string& text, const Config& cfg = default_config());
Workspace load_workspace_file(const std::string& path, const Config& cfg = default_config());

/** Serialization in the same JSON shape the loader accepts. */
std::string workspace_to_text(const Workspace& ws);

/** Canonical rendering: var=value lines sorted by variable id. */
std::string render_assignment(const Instance& p, const Assignment& phi);

/** Per-algebra structural report: congruence lattice with covers, monolith
 *  and subdirect irreducibility, semilattice edges, centralizers over all
 *  covering pairs, and the multiplication term table. */
std::string analyze_algebra(const FiniteAlgebra& a, const Config& cfg = default_config());

} // namespace uacsp

#endif
