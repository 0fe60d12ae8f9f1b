// Copyright 2026 The qchan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Batch front end. Exit codes: 0 success, 2 self-check failure, 64 usage
// error, 65 data error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qchan/channels.hpp"
#include "qchan/info.hpp"
#include "qchan/json_io.hpp"
#include "qchan/selftest.hpp"
#include "qchan/semigroup.hpp"
#include "qchan/transforms.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSelfCheck = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

struct GlobalOpts {
    double tol = qchan::kDefaultTol;
    std::uint64_t seed = 1;
    std::size_t trials = 20;
    std::size_t budget = 64;
    std::string out_path;
};

void emit_text(const GlobalOpts& g, const std::string& text) {
    if (g.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(g.out_path);
    if (!out) throw qchan::CodecError("cannot open output file: " + g.out_path);
    out << text;
}

void emit(const GlobalOpts& g, const qchan::Json& j) { emit_text(g, j.dump(2) + "\n"); }

qchan::Json check_to_json(const qchan::CheckResult& r) {
    return qchan::Json{{"check", r.check},
                       {"params", r.params},
                       {"residual", r.residual},
                       {"tol", r.tol},
                       {"pass", r.pass}};
}

std::string report_lines(const qchan::VerificationReport& report) {
    std::string text;
    for (const auto& r : report) text += check_to_json(r).dump() + "\n";
    return text;
}

int cmd_unitary(const GlobalOpts& g, const std::string& kind, std::size_t n) {
    qchan::ComplexMatrix u;
    try {
        if (kind == "fourier") u = qchan::fourier_unitary(n);
        else if (kind == "sine") u = qchan::sine_unitary(n);
        else u = qchan::hartley_unitary(n);
    } catch (const std::runtime_error& e) {
        std::cerr << "unitarity self-check failed: " << e.what() << "\n";
        return kExitSelfCheck;
    }
    emit(g, qchan::matrix_to_json(u));
    return kExitOk;
}

int cmd_apply(const GlobalOpts& g, const std::string& channel_path, const std::string& state_path) {
    const qchan::Channel ch = qchan::channel_from_file(channel_path);
    const qchan::ComplexMatrix state = qchan::matrix_from_json(qchan::read_json_file(state_path));
    emit(g, qchan::matrix_to_json(qchan::channel_action(ch).apply(state)));
    return kExitOk;
}

int cmd_compose(const GlobalOpts& g, const std::string& outer_path, const std::string& inner_path) {
    const qchan::Channel outer = qchan::channel_from_file(outer_path);
    const qchan::Channel inner = qchan::channel_from_file(inner_path);
    if (std::holds_alternative<qchan::HolevoChannel>(outer) &&
        std::holds_alternative<qchan::HolevoChannel>(inner)) {
        const auto composed = qchan::holevo_compose(std::get<qchan::HolevoChannel>(outer),
                                                    std::get<qchan::HolevoChannel>(inner), g.tol);
        emit(g, qchan::channel_to_json(qchan::Channel(composed)));
        return kExitOk;
    }
    const auto composed =
        qchan::compose_kraus(qchan::to_kraus(outer, g.tol), qchan::to_kraus(inner, g.tol));
    emit(g, qchan::channel_to_json(qchan::Channel(composed)));
    return kExitOk;
}

int cmd_choi(const GlobalOpts& g, const std::string& channel_path) {
    const qchan::ChoiMatrix choi = qchan::choi_of_channel(qchan::channel_from_file(channel_path));
    emit(g, qchan::Json{{"input_dim", choi.input_dim}, {"mat", qchan::matrix_to_json(choi.mat)}});
    return kExitOk;
}

int cmd_kraus(const GlobalOpts& g, const std::string& channel_path, const std::string& method,
              double rank_tol) {
    const qchan::Channel ch = qchan::channel_from_file(channel_path);
    qchan::KrausChannel kc = [&] {
        if (method == "structural") {
            const auto* pc = std::get_if<qchan::PreconditionerChannel>(&ch);
            if (pc == nullptr) {
                throw qchan::CodecError("--method structural requires a preconditioner channel");
            }
            return qchan::kraus_from_preconditioner(*pc);
        }
        if (method == "choi") return qchan::kraus_from_choi(qchan::choi_of_channel(ch), rank_tol);
        return qchan::to_kraus(ch, rank_tol);  // auto
    }();
    emit(g, qchan::channel_to_json(qchan::Channel(std::move(kc))));
    return kExitOk;
}

int cmd_stinespring(const GlobalOpts& g, const std::string& channel_path) {
    const auto kc = qchan::to_kraus(qchan::channel_from_file(channel_path), g.tol);
    emit(g, qchan::isometry_to_json(qchan::stinespring_isometry(kc)));
    return kExitOk;
}

int cmd_verify(const GlobalOpts& g, const std::string& channel_path) {
    const auto report = qchan::verify_channel_axioms(qchan::channel_from_file(channel_path), g.tol,
                                                     g.seed, g.trials);
    emit_text(g, report_lines(report));
    return qchan::all_passed(report) ? kExitOk : kExitSelfCheck;
}

int cmd_stochastic(const GlobalOpts& g, const std::string& channel_path) {
    const qchan::Channel ch = qchan::channel_from_file(channel_path);
    const auto* hc = std::get_if<qchan::HolevoChannel>(&ch);
    if (hc == nullptr) {
        throw qchan::CodecError("the stochastic matrix is defined for holevo channels");
    }
    emit(g, qchan::stochastic_to_json(qchan::stochastic_of(*hc)));
    return kExitOk;
}

int cmd_idempotent(const GlobalOpts& g, const std::string& channel_path, const std::string& method) {
    const qchan::Channel ch = qchan::channel_from_file(channel_path);
    qchan::Json result;
    if (method == "operational" || method == "both") {
        result["operational"] = qchan::is_idempotent_operational(ch, g.tol);
    }
    if (method == "holevo" || method == "both") {
        const auto* hc = std::get_if<qchan::HolevoChannel>(&ch);
        if (hc == nullptr) {
            if (method == "holevo") {
                throw qchan::CodecError("--method holevo requires a holevo channel");
            }
        } else {
            const auto report = qchan::is_idempotent_holevo(*hc, g.tol);
            qchan::Json steady;
            switch (report.status) {
                case qchan::HolevoIdempotencyStatus::Idempotent: steady["status"] = "idempotent"; break;
                case qchan::HolevoIdempotencyStatus::NotIdempotent:
                    steady["status"] = "not-idempotent";
                    break;
                default: steady["status"] = "inapplicable (dependent densities)"; break;
            }
            steady["max_residual"] = report.max_residual;
            steady["worst_state_index"] = report.worst_state;
            result["steady_state"] = steady;
            if (method == "both" &&
                report.status != qchan::HolevoIdempotencyStatus::Inapplicable) {
                result["agreement"] =
                    (report.status == qchan::HolevoIdempotencyStatus::Idempotent) ==
                    result["operational"].get<bool>();
            }
        }
    }
    emit(g, result);
    return kExitOk;
}

int cmd_ginverse(const GlobalOpts& g, const std::string& a_path, const std::string& adag_path) {
    const auto a = qchan::channel_action(qchan::channel_from_file(a_path));
    const auto adag = qchan::channel_action(qchan::channel_from_file(adag_path));
    const auto r = qchan::generalized_inverse_probe(a, adag, g.tol);
    emit(g, qchan::Json{{"generalized_inverse", r.generalized_inverse},
                        {"generalized_inverse_residual", r.generalized_inverse_residual},
                        {"semi_inverse", r.semi_inverse},
                        {"semi_inverse_residual", r.semi_inverse_residual},
                        {"a_adag_idempotency_residual", r.a_adag_idempotency},
                        {"adag_a_idempotency_residual", r.adag_a_idempotency},
                        {"tol", r.tol}});
    return kExitOk;
}

int cmd_rdc(const GlobalOpts& g, const std::string& delta_path, const std::string& phi_path) {
    const auto delta = qchan::channel_action(qchan::channel_from_file(delta_path));
    const auto phi = qchan::channel_action(qchan::channel_from_file(phi_path));
    const auto r = qchan::resource_destroying_check(delta, phi, g.tol);
    emit(g, qchan::Json{{"commuting_absorption", r.commuting_absorption},
                        {"absorb_left_residual", r.absorb_left},
                        {"absorb_right_residual", r.absorb_right},
                        {"left_sandwich", r.left_sandwich},
                        {"left_sandwich_residual", r.sandwich_left},
                        {"right_sandwich", r.right_sandwich},
                        {"right_sandwich_residual", r.sandwich_right},
                        {"tol", r.tol}});
    return kExitOk;
}

int cmd_fidelity(const GlobalOpts& g, const std::string& channel_path,
                 const std::string& state_path) {
    const auto kc = qchan::to_kraus(qchan::channel_from_file(channel_path), g.tol);
    const qchan::DensityMatrix rho(qchan::matrix_from_json(qchan::read_json_file(state_path)),
                                   g.tol);
    emit(g, qchan::Json{{"entanglement_fidelity", qchan::entanglement_fidelity(rho, kc)}});
    return kExitOk;
}

int cmd_eb_check(const GlobalOpts& g, const std::string& channel_path) {
    const qchan::Channel ch = qchan::channel_from_file(channel_path);
    const auto verdict = qchan::eb_classify(ch, g.tol);
    qchan::Json result{{"verdict", qchan::to_string(verdict)}};
    if (const auto* pc = std::get_if<qchan::PreconditionerChannel>(&ch)) {
        result["cq_structure"] =
            qchan::cq_structure_test(*pc) == qchan::CqVerdict::ClassicalQuantum ? "c-q" : "not c-q";
    }
    emit(g, result);
    return kExitOk;
}

int cmd_capacity(const GlobalOpts& g, std::size_t message_count, std::size_t block_length,
                 const std::string& kind, std::size_t dim) {
    const std::size_t n = dim == 0 ? message_count : dim;
    qchan::ComplexMatrix u;
    if (kind == "fourier") u = qchan::fourier_unitary(n);
    else if (kind == "sine") u = qchan::sine_unitary(n);
    else u = qchan::hartley_unitary(n);

    const qchan::Code code = qchan::capacity_achieving_code(u, message_count, block_length, g.tol);
    const auto ch = qchan::kraus_from_preconditioner(qchan::rank_one_preconditioner(u));
    const double pe = qchan::code_error_probability(ch, code, g.budget);
    emit(g, qchan::Json{{"capacity_bits", qchan::preconditioner_capacity(message_count)},
                        {"message_count", message_count},
                        {"block_length", block_length},
                        {"error_probability", pe},
                        {"code", qchan::code_to_json(code)}});
    if (pe > 1e-12) {
        std::cerr << "self-check failed: the witness code decodes with error " << pe << "\n";
        return kExitSelfCheck;
    }
    return kExitOk;
}

int cmd_code_test(const GlobalOpts& g, const std::string& channel_path,
                  const std::string& code_path) {
    const auto kc = qchan::to_kraus(qchan::channel_from_file(channel_path), g.tol);
    const qchan::Code code = qchan::code_from_json(qchan::read_json_file(code_path));
    const double pe = qchan::code_error_probability(kc, code, g.budget);
    emit(g, qchan::Json{{"error_probability", pe}, {"block_length", code.block_length}});
    return kExitOk;
}

int cmd_suite(const GlobalOpts& g, bool tol_given, bool trials_given) {
    qchan::SuiteConfig cfg;
    cfg.seed = g.seed;
    cfg.memory_budget = g.budget;
    if (tol_given) cfg.tol_override = g.tol;
    if (trials_given) cfg.trials_override = g.trials;
    const auto rows = qchan::run_invariant_suite(cfg);
    std::string text;
    bool all_pass = true;
    for (const auto& r : rows) {
        text += check_to_json(r).dump() + "\n";
        all_pass = all_pass && r.pass;
    }
    emit_text(g, text);
    return all_pass ? kExitOk : kExitSelfCheck;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum-channel algebra toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    auto* tol_opt = app.add_option("--tol", g.tol, "tolerance for checks and validation")
                        ->check(CLI::PositiveNumber);
    app.add_option("--seed", g.seed, "seed for randomized sweeps");
    auto* trials_opt =
        app.add_option("--trials", g.trials, "trial count for randomized sweeps")
            ->check(CLI::Range(std::size_t{1}, std::size_t{100000}));
    app.add_option("--budget", g.budget, "max composite dimension for tensor powers");
    app.add_option("--out", g.out_path, "write output to a file instead of stdout");

    std::string kind = "fourier", method = "auto", state_path, channel_path, second_path;
    std::size_t n = 0, message_count = 0, block_length = 1, dim = 0;
    double rank_tol = qchan::kDefaultTol;

    auto* unitary = app.add_subcommand("unitary", "emit a transform unitary as JSON");
    unitary->add_option("--kind", kind, "fourier|sine|hartley")
        ->required()
        ->check(CLI::IsMember({"fourier", "sine", "hartley"}));
    unitary->add_option("--n", n, "dimension")->required()->check(CLI::PositiveNumber);

    auto* apply = app.add_subcommand("apply", "apply a channel to a matrix");
    apply->add_option("--channel", channel_path)->required();
    apply->add_option("--state", state_path)->required();

    auto* compose = app.add_subcommand("compose", "compose two channels (inner first, then outer)");
    compose->add_option("--outer", channel_path)->required();
    compose->add_option("--inner", second_path)->required();

    auto* choi = app.add_subcommand("choi", "emit the Choi matrix of a channel");
    choi->add_option("--channel", channel_path)->required();

    auto* kraus = app.add_subcommand("kraus", "emit a Kraus form of a channel");
    kraus->add_option("--channel", channel_path)->required();
    kraus->add_option("--method", method, "auto|structural|choi")
        ->check(CLI::IsMember({"auto", "structural", "choi"}));
    kraus->add_option("--rank-tol", rank_tol)->check(CLI::PositiveNumber);

    auto* stinespring = app.add_subcommand("stinespring", "emit the Stinespring isometry");
    stinespring->add_option("--channel", channel_path)->required();

    auto* verify = app.add_subcommand("verify", "check the channel axioms, JSON line per check");
    verify->add_option("--channel", channel_path)->required();

    auto* stochastic = app.add_subcommand("stochastic", "stochastic matrix of a holevo channel");
    stochastic->add_option("--channel", channel_path)->required();

    auto* idempotent = app.add_subcommand("idempotent", "idempotency tests");
    idempotent->add_option("--channel", channel_path)->required();
    idempotent->add_option("--method", method, "operational|holevo|both")
        ->check(CLI::IsMember({"operational", "holevo", "both"}));

    auto* ginverse = app.add_subcommand("ginverse", "generalized-inverse probe for a channel pair");
    ginverse->add_option("--a", channel_path)->required();
    ginverse->add_option("--adagger", second_path)->required();

    auto* rdc = app.add_subcommand("rdc-check", "resource-destroying identities for (delta, phi)");
    rdc->add_option("--delta", channel_path)->required();
    rdc->add_option("--phi", second_path)->required();

    auto* fidelity = app.add_subcommand("fidelity", "entanglement fidelity of a state and channel");
    fidelity->add_option("--channel", channel_path)->required();
    fidelity->add_option("--state", state_path)->required();

    auto* eb = app.add_subcommand("eb-check", "entanglement-breaking classification");
    eb->add_option("--channel", channel_path)->required();

    auto* capacity = app.add_subcommand("capacity", "capacity of the rank-one preconditioner");
    capacity->add_option("--J", message_count, "code size")->required()->check(CLI::PositiveNumber);
    capacity->add_option("--block-length", block_length)->check(CLI::PositiveNumber);
    capacity->add_option("--kind", kind, "fourier|sine|hartley")
        ->check(CLI::IsMember({"fourier", "sine", "hartley"}));
    capacity->add_option("--dim", dim, "channel dimension (defaults to J)");

    auto* code_test = app.add_subcommand("code-test", "decoding error of a code through a channel");
    code_test->add_option("--channel", channel_path)->required();
    code_test->add_option("--code", second_path)->required();

    auto* suite = app.add_subcommand("suite", "run the invariant suite, JSON line per check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (unitary->parsed()) return cmd_unitary(g, kind, n);
        if (apply->parsed()) return cmd_apply(g, channel_path, state_path);
        if (compose->parsed()) return cmd_compose(g, channel_path, second_path);
        if (choi->parsed()) return cmd_choi(g, channel_path);
        if (kraus->parsed()) return cmd_kraus(g, channel_path, method, rank_tol);
        if (stinespring->parsed()) return cmd_stinespring(g, channel_path);
        if (verify->parsed()) return cmd_verify(g, channel_path);
        if (stochastic->parsed()) return cmd_stochastic(g, channel_path);
        if (idempotent->parsed())
            return cmd_idempotent(g, channel_path, method == "auto" ? "both" : method);
        if (ginverse->parsed()) return cmd_ginverse(g, channel_path, second_path);
        if (rdc->parsed()) return cmd_rdc(g, channel_path, second_path);
        if (fidelity->parsed()) return cmd_fidelity(g, channel_path, state_path);
        if (eb->parsed()) return cmd_eb_check(g, channel_path);
        if (capacity->parsed()) return cmd_capacity(g, message_count, block_length, kind, dim);
        if (code_test->parsed()) return cmd_code_test(g, channel_path, second_path);
        if (suite->parsed()) return cmd_suite(g, !tol_opt->empty(), !trials_opt->empty());
    } catch (const qchan::CodecError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const qchan::ResourceError& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::invalid_argument& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSelfCheck;
    }
    return kExitUsage;
}
