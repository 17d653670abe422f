#include "uacsp.h"

#include <cstring>
#include <new>
#include <string>

#include "core/diff.hpp"
#include "core/errors.hpp"
#include "core/generator.hpp"
#include "core/oracle.hpp"
#include "core/solver.hpp"
#include "core/workspace.hpp"

struct uacsp_workspace {
    uacsp::Workspace ws;
};

namespace {

char* dup_string(const std::string& s) {
    char* out = new (std::nothrow) char[s.size() + 1];
    if (!out) return nullptr;
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void set_err(char** err, const std::string& msg) {
    if (err) *err = dup_string(msg);
}

template <typename Fn>
uacsp_status guarded(char** err, Fn&& fn) {
    try {
        return fn();
    } catch (const uacsp::input_error& e) {
        set_err(err, e.what());
        return UACSP_INPUT_ERROR;
    } catch (const uacsp::resource_error& e) {
        set_err(err, e.what());
        return UACSP_RESOURCE_ERROR;
    } catch (const uacsp::internal_error& e) {
        set_err(err, e.what());
        return UACSP_INTERNAL_ERROR;
    } catch (const std::exception& e) {
        set_err(err, e.what());
        return UACSP_INTERNAL_ERROR;
    }
}

} // namespace

extern "C" {

const char* uacsp_version(void) { return "1.0.0"; }

void uacsp_string_free(char* s) { delete[] s; }

uacsp_status uacsp_workspace_load(const char* path, uacsp_workspace** out, char** err) {
    if (!path || !out) {
        set_err(err, "null argument");
        return UACSP_INPUT_ERROR;
    }
    return guarded(err, [&] {
        auto* ws = new uacsp_workspace{uacsp::load_workspace_file(path)};
        *out = ws;
        return UACSP_OK;
    });
}

uacsp_status uacsp_workspace_parse(const char* text, uacsp_workspace** out, char** err) {
    if (!text || !out) {
        set_err(err, "null argument");
        return UACSP_INPUT_ERROR;
    }
    return guarded(err, [&] {
        auto* ws = new uacsp_workspace{uacsp::load_workspace_text(text)};
        *out = ws;
        return UACSP_OK;
    });
}

void uacsp_workspace_free(uacsp_workspace* ws) { delete ws; }

int uacsp_workspace_algebra_count(const uacsp_workspace* ws) {
    return ws ? static_cast<int>(ws->ws.algebras.size()) : 0;
}

int uacsp_workspace_instance_count(const uacsp_workspace* ws) {
    return ws ? static_cast<int>(ws->ws.instances.size()) : 0;
}

uacsp_status uacsp_analyze(const uacsp_workspace* ws, char** report, char** err) {
    if (!ws || !report) {
        set_err(err, "null argument");
        return UACSP_INPUT_ERROR;
    }
    return guarded(err, [&] {
        std::string out;
        for (const auto& a : ws->ws.algebras) out += uacsp::analyze_algebra(*a);
        *report = dup_string(out);
        return UACSP_OK;
    });
}

uacsp_status uacsp_solve_instance(const uacsp_workspace* ws, int index, int trace, int oracle_check,
                                  char** report, int* sat, char** err) {
    if (!ws || !report || !sat) {
        set_err(err, "null argument");
        return UACSP_INPUT_ERROR;
    }
    if (index < 0 || index >= static_cast<int>(ws->ws.instances.size())) {
        set_err(err, "instance index out of range");
        return UACSP_INPUT_ERROR;
    }
    return guarded(err, [&]() -> uacsp_status {
        const uacsp::Instance& p = ws->ws.instances[index];
        uacsp::SolverOptions opts;
        opts.collect_trace = trace != 0;
        uacsp::SolveOutcome out = uacsp::solve(p, opts);
        *sat = out.sat ? 1 : 0;
        std::string text;
        if (out.sat) text += uacsp::render_assignment(p, out.assignment);
        if (trace)
            for (const auto& line : out.trace) text += "# " + line + "\n";
        if (oracle_check) {
            uacsp::OracleOutcome want = uacsp::brute_force_solve(p);
            if (want.sat != out.sat) {
                text += "# oracle disagrees\n";
                *report = dup_string(text);
                return UACSP_DISAGREEMENT;
            }
            text += "# oracle agrees\n";
        }
        *report = dup_string(text);
        return out.sat ? UACSP_OK : UACSP_UNSAT;
    });
}

uacsp_status uacsp_oracle_instance(const uacsp_workspace* ws, int index, char** report, int* sat,
                                   char** err) {
    if (!ws || !report || !sat) {
        set_err(err, "null argument");
        return UACSP_INPUT_ERROR;
    }
    if (index < 0 || index >= static_cast<int>(ws->ws.instances.size())) {
        set_err(err, "instance index out of range");
        return UACSP_INPUT_ERROR;
    }
    return guarded(err, [&]() -> uacsp_status {
        const uacsp::Instance& p = ws->ws.instances[index];
        uacsp::OracleOutcome out = uacsp::brute_force_solve(p);
        *sat = out.sat ? 1 : 0;
        std::string text;
        if (out.sat) text = uacsp::render_assignment(p, out.assignment);
        *report = dup_string(text);
        return out.sat ? UACSP_OK : UACSP_UNSAT;
    });
}

uacsp_status uacsp_generate(uint64_t seed, int size, int vars, int constraints,
                            char** workspace_text, char** err) {
    if (!workspace_text) {
        set_err(err, "null argument");
        return UACSP_INPUT_ERROR;
    }
    return guarded(err, [&] {
        auto alg = uacsp::random_idempotent_algebra(seed, size, {{"f", 2}, {"g", 3}});
        uacsp::Workspace ws;
        ws.algebras.push_back(alg);
        ws.instances.push_back(uacsp::random_invariant_instance(seed ^ 0x9e3779b97f4a7c15ull, alg,
                                                                vars, constraints, 3));
        *workspace_text = dup_string(uacsp::workspace_to_text(ws));
        return UACSP_OK;
    });
}

uacsp_status uacsp_diff(uint64_t seed, int cases, char** report, char** reproducer, char** err) {
    if (!report || cases < 0) {
        set_err(err, "bad arguments");
        return UACSP_INPUT_ERROR;
    }
    return guarded(err, [&]() -> uacsp_status {
        uacsp::DiffReport r = uacsp::run_diff(seed, cases);
        *report = dup_string(r.to_string());
        if (!r.all_agree) {
            if (reproducer) *reproducer = dup_string(r.reproducer);
            return UACSP_DISAGREEMENT;
        }
        return UACSP_OK;
    });
}

} // extern "C"
