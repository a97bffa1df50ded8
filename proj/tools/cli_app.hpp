#pragma once

// Command-line front end. run() is kept separate from main() so the test
// suite can drive it in-process.
//
// Exit codes: 0 success, 1 domain error (token printed on stderr), 2 usage.

#include "liequant/json_io.hpp"
#include "liequant/liequant.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace liequant::cli {

using nlohmann::json;

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("io_error", "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw Error("bad_json", e.what());
    }
}

// Accepts inline JSON or a path to a JSON file.
inline json json_arg(const std::string& arg) {
    const auto first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (arg[first] == '[' || arg[first] == '{')) return parse_json_text(arg);
    return parse_json_text(read_file(arg));
}

inline json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx to_complex(const std::vector<double>& v) { return {v.at(0), v.size() > 1 ? v[1] : 0.0}; }

inline rotations::Vec3 to_vec3(const std::vector<double>& v) { return {v.at(0), v.at(1), v.at(2)}; }

inline std::uint64_t seed_or_env(const std::optional<std::uint64_t>& seed, std::uint64_t fallback) {
    if (seed) return *seed;
    if (const char* env = std::getenv("LIEQUANT_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw Error("bad_seed", "LIEQUANT_SEED is not an unsigned integer");
        }
    }
    return fallback;
}

struct RotationInput {
    std::string matrix;
    std::string axis;
    double angle = 0.0;
    std::vector<double> vector;

    void add_to(CLI::App* sub) {
        sub->add_option("--matrix", matrix, "3x3 rotation as JSON rows or a JSON file path");
        sub->add_option("--axis", axis, "elementary rotation axis")->check(CLI::IsMember({"x", "y", "z"}));
        sub->add_option("--angle", angle, "elementary rotation angle in radians");
        sub->add_option("--rodrigues", vector, "rotation vector a; R = exp(X(a))")->delimiter(',')->expected(3);
    }

    rotations::Rotation get() const {
        if (!matrix.empty()) return rotations::Rotation(json_io::matrix_from_json(json_arg(matrix)));
        if (!vector.empty()) return rotations::rodrigues(to_vec3(vector));
        if (!axis.empty()) {
            const auto ax = axis == "x" ? rotations::Axis::x : axis == "y" ? rotations::Axis::y : rotations::Axis::z;
            return rotations::elementary(ax, angle);
        }
        throw CLI::ValidationError("rotation", "give one of --matrix, --rodrigues or --axis/--angle");
    }
};

struct ConstantFlags {
    PhysicalConstants pc;
    bool natural = false;

    void add_to(CLI::App* sub) {
        sub->add_flag("--natural", natural, "use kbar = hbar = c = 1");
        sub->add_option("--kbar", pc.kbar, "Boltzmann constant (J/K)");
        sub->add_option("--hbar", pc.hbar, "reduced Planck constant (J s)");
        sub->add_option("--c", pc.c, "speed of light (m/s)");
    }

    PhysicalConstants get() const {
        PhysicalConstants p = pc;
        if (natural) {
            const PhysicalConstants n = PhysicalConstants::natural();
            p.kbar = n.kbar;
            p.hbar = n.hbar;
            p.c = n.c;
        }
        p.validate();
        return p;
    }
};

inline json rotation_json(const rotations::Rotation& r) { return json_io::matrix_to_json(r.matrix()); }

inline spectra::SpectrumDataset read_lines_csv(const std::string& path) {
    std::istringstream in(read_file(path));
    std::string line;
    spectra::SpectrumDataset d;
    bool header = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        if (header) {
            header = false;
            if (line.find("omega") != std::string::npos) continue;
        }
        std::istringstream row(line);
        std::string a, b;
        if (!std::getline(row, a, ',')) throw Error("bad_csv", "malformed line: " + line);
        std::getline(row, b, ',');
        try {
            spectra::Line l;
            l.omega = std::stod(a);
            l.weight = b.empty() ? 1.0 : std::stod(b);
            d.lines.push_back(l);
        } catch (const std::exception&) {
            throw Error("bad_csv", "malformed line: " + line);
        }
    }
    return d;
}

inline std::vector<double> read_levels(const std::string& arg) {
    const json j = json_arg(arg);
    try {
        if (j.is_array()) return j.get<std::vector<double>>();
        return j.at("levels").get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw Error("bad_json", e.what());
    }
}

} // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    using namespace detail;

    CLI::App app{"Lie algebras, rotations, Fock spaces, su(2) representations, thermal states and spectra"};
    app.require_subcommand(1);
    std::string out_path;
    app.add_option("--out", out_path, "write the result to this file instead of stdout");

    // Each subcommand registers an action that writes its result to a stream.
    std::vector<std::pair<CLI::App*, std::function<void(std::ostream&)>>> actions;
    auto emit_json = [](std::ostream& os, const json& j) { os << j.dump(2) << '\n'; };

    // rotate
    auto rot_in = std::make_shared<RotationInput>();
    auto rot_v = std::make_shared<std::vector<double>>();
    {
        auto* sub = app.add_subcommand("rotate", "Build a rotation (elementary axis/angle, Rodrigues vector or "
                                                 "matrix) and report its matrix, axis and action on a vector");
        rot_in->add_to(sub);
        sub->add_option("--apply", *rot_v, "vector to rotate")->delimiter(',')->expected(3);
        actions.emplace_back(sub, [=](std::ostream& os) {
            const auto r = rot_in->get();
            json j{{"matrix", rotation_json(r)}};
            const auto ax = rotations::rotation_axis(r);
            j["axis"] = ax ? json(std::vector<double>(ax->begin(), ax->end())) : json("identity");
            if (!rot_v->empty()) {
                const auto v = r.apply(to_vec3(*rot_v));
                j["rotated"] = std::vector<double>(v.begin(), v.end());
            }
            emit_json(os, j);
        });
    }

    // euler
    auto eul_in = std::make_shared<RotationInput>();
    {
        auto* sub = app.add_subcommand("euler", "ZYZ Euler angles R = Rz(alpha) Ry(beta) Rz(gamma) of a rotation");
        eul_in->add_to(sub);
        actions.emplace_back(sub, [=](std::ostream& os) {
            const auto r = eul_in->get();
            const auto e = rotations::euler_zyz(r);
            const double defect = max_abs_diff(rotations::from_euler_zyz(e).matrix(), r.matrix());
            emit_json(os, {{"alpha", e.alpha}, {"beta", e.beta}, {"gamma", e.gamma}, {"reconstruction_error", defect}});
        });
    }

    // lift
    auto lift_in = std::make_shared<RotationInput>();
    {
        auto* sub = app.add_subcommand("lift", "Lift a rotation to SU(2) through the double cover, with the sign "
                                               "fixed by Re x > 0 (then Im x, Re y, Im y)");
        lift_in->add_to(sub);
        actions.emplace_back(sub, [=](std::ostream& os) {
            const auto r = lift_in->get();
            const auto u = rotations::lift_to_su2(r);
            const double defect = max_abs_diff(rotations::covering_map(u).matrix(), r.matrix());
            emit_json(os, {{"x", complex_json(u.x)}, {"y", complex_json(u.y)}, {"cover_error", defect}});
        });
    }

    // cover-check
    auto cc_samples = std::make_shared<std::size_t>(1000);
    auto cc_seed = std::make_shared<std::optional<std::uint64_t>>();
    {
        auto* sub = app.add_subcommand("cover-check", "Check the SU(2) -> SO(3) covering map on Haar-random "
                                                      "samples: homomorphism, two-to-one, kernel and lift round trip");
        sub->add_option("--samples", *cc_samples, "number of random pairs")->check(CLI::PositiveNumber);
        sub->add_option("--seed", *cc_seed, "random seed (default: LIEQUANT_SEED or 1)");
        actions.emplace_back(sub, [=](std::ostream& os) {
            std::mt19937_64 gen(seed_or_env(*cc_seed, 1));
            double hom = 0.0, sign = 0.0, lift = 0.0;
            for (std::size_t i = 0; i < *cc_samples; ++i) {
                const auto u1 = rotations::haar_su2(gen), u2 = rotations::haar_su2(gen);
                const auto r1 = rotations::covering_map(u1), r2 = rotations::covering_map(u2);
                hom = std::max(hom, max_abs_diff(rotations::covering_map(u1 * u2).matrix(), (r1 * r2).matrix()));
                sign = std::max(sign, max_abs_diff(rotations::covering_map(-u1).matrix(), r1.matrix()));
                lift = std::max(lift,
                                max_abs_diff(rotations::covering_map(rotations::lift_to_su2(r1)).matrix(), r1.matrix()));
            }
            const auto k_plus = rotations::covering_map(rotations::SU2Element({1.0, 0.0}, {}));
            const auto k_minus = rotations::covering_map(rotations::SU2Element({-1.0, 0.0}, {}));
            const bool kernel_ok = max_abs_diff(k_plus.matrix(), ComplexMatrix::identity(3)) <= 1e-14 &&
                                   max_abs_diff(k_minus.matrix(), ComplexMatrix::identity(3)) <= 1e-14;
            emit_json(os, {{"samples", *cc_samples},
                           {"homomorphism_defect", hom},
                           {"sign_defect", sign},
                           {"lift_defect", lift},
                           {"kernel_ok", kernel_ok}});
            if (hom > 1e-10 || sign > 1e-14 || lift > 1e-8 || !kernel_ok)
                throw Error("cover_check_failed", "a covering-map property exceeded its tolerance");
        });
    }

    // algebra-verify
    auto av_name = std::make_shared<std::string>();
    auto av_file = std::make_shared<std::string>();
    auto av_all = std::make_shared<bool>(false);
    auto av_constants = std::make_shared<bool>(false);
    {
        auto* sub = app.add_subcommand("algebra-verify", "Structure constants, Jacobi residual, realization "
                                                         "consistency, Killing form and semisimplicity");
        sub->add_option("--name", *av_name, "builtin: so3, su2, heisenberg_t3, oscillator_os1, gl(n), sl(n), "
                                            "so(p,q), sp(2n)");
        sub->add_option("--file", *av_file, "algebra JSON {name, dim, names, c}");
        sub->add_flag("--all", *av_all, "verify every builtin algebra");
        sub->add_flag("--constants", *av_constants, "include the structure constants in the output");
        actions.emplace_back(sub, [=](std::ostream& os) {
            auto report = [&](const lie::LieAlgebraBasis& b, std::optional<double> realization) {
                json j{{"name", b.name()},
                       {"dim", b.dim()},
                       {"antisymmetry_defect", b.antisymmetry_defect()},
                       {"jacobi_residual", lie::verify_jacobi(b)},
                       {"semisimple", lie::is_semisimple(b)},
                       {"killing_form", json_io::matrix_to_json(lie::killing_form(b))}};
                j["realization_residual"] = realization ? json(*realization) : json(nullptr);
                if (*av_constants) j["algebra"] = json_io::algebra_to_json(b);
                return j;
            };
            if (*av_all) {
                json arr = json::array();
                for (const auto& n : lie::builtin_names()) {
                    const auto r = lie::builtin_algebra(n);
                    arr.push_back(report(r.basis, r.consistency_residual()));
                }
                emit_json(os, arr);
            } else if (!av_file->empty()) {
                emit_json(os, report(json_io::algebra_from_json(json_arg(*av_file)), std::nullopt));
            } else if (!av_name->empty()) {
                const auto r = lie::builtin_algebra(*av_name);
                emit_json(os, report(r.basis, r.consistency_residual()));
            } else {
                throw CLI::ValidationError("algebra-verify", "give --name, --file or --all");
            }
        });
    }

    // rigidbody
    struct RigidOpts {
        std::vector<double> inertia{1.0, 2.0, 3.0};
        std::vector<double> j0{1.0, 1.0, 1.0};
        double dt = 1e-3;
        std::size_t steps = 10000;
        std::size_t every = 1;
    };
    auto rb = std::make_shared<RigidOpts>();
    {
        auto* sub = app.add_subcommand("rigidbody", "Integrate the Euler equations dJ/dt = J x I^{-1}J of a free "
                                                    "rigid body with RK4; CSV t,J1,J2,J3,E,Jsq");
        sub->add_option("--I", rb->inertia, "principal moments of inertia")->delimiter(',')->expected(3);
        sub->add_option("--J", rb->j0, "initial angular momentum")->delimiter(',')->expected(3);
        sub->add_option("--dt", rb->dt, "time step (negative integrates backwards)");
        sub->add_option("--steps", rb->steps, "number of steps");
        sub->add_option("--every", rb->every, "write every k-th state")->check(CLI::PositiveNumber);
        actions.emplace_back(sub, [=](std::ostream& os) {
            poisson::RigidBodyState s0;
            s0.J = to_vec3(rb->j0);
            s0.I = to_vec3(rb->inertia);
            const auto traj = poisson::integrate_rigid_body(s0, rb->dt, rb->steps);
            std::vector<poisson::RigidBodyState> kept;
            for (std::size_t i = 0; i < traj.size(); ++i)
                if (i % rb->every == 0 || i + 1 == traj.size()) kept.push_back(traj[i]);
            poisson::write_trajectory_csv(os, kept);
        });
    }

    // fock-spectrum
    struct FockOpts {
        std::size_t dim = 10;
        double hbar = 1.0;
        double omega = 1.0;
        std::size_t count = 5;
    };
    auto fo = std::make_shared<FockOpts>();
    {
        auto* sub = app.add_subcommand("fock-spectrum", "Lowest eigenvalues of H = omega a* a on a truncated "
                                                        "bosonic Fock space");
        sub->add_option("--dim", fo->dim, "truncation (levels 0..dim-1)");
        sub->add_option("--hbar", fo->hbar, "value of hbar");
        sub->add_option("--omega", fo->omega, "oscillator frequency");
        sub->add_option("--count", fo->count, "number of eigenvalues (at most dim-1)");
        actions.emplace_back(sub, [=](std::ostream& os) {
            const auto f = fock::build_fock(fo->dim, fo->hbar);
            const ComplexMatrix ccr = commutator(f.a, f.a_dag);
            double ccr_defect = 0.0;
            for (std::size_t k = 0; k + 1 < f.dim; ++k) ccr_defect = std::max(ccr_defect, std::abs(ccr(k, k) - f.hbar));
            emit_json(os, {{"eigenvalues", fock::oscillator_spectrum(f, fo->omega, fo->count)},
                           {"metric", f.metric},
                           {"ccr_defect", ccr_defect}});
        });
    }

    // coherent
    struct CoherentOpts {
        std::size_t dim = 60;
        double hbar = 1.0;
        std::vector<double> lambda{1.0, 0.0}, z{1.0, 0.0}, lambda2, z2;
        double omega = 1.0, t = 0.0;
    };
    auto co = std::make_shared<CoherentOpts>();
    {
        auto* sub = app.add_subcommand("coherent", "Coherent states |lambda,z>: truncated inner product against "
                                                   "lambda' conj(lambda) exp(hbar z' conj(z)), uncertainty "
                                                   "product and time evolution");
        sub->add_option("--dim", co->dim, "truncation");
        sub->add_option("--hbar", co->hbar, "value of hbar");
        sub->add_option("--lambda", co->lambda, "re,im of lambda")->delimiter(',')->expected(1, 2);
        sub->add_option("--z", co->z, "re,im of z")->delimiter(',')->expected(1, 2);
        sub->add_option("--lambda2", co->lambda2, "re,im of lambda' (default lambda)")->delimiter(',')->expected(1, 2);
        sub->add_option("--z2", co->z2, "re,im of z' (default z)")->delimiter(',')->expected(1, 2);
        sub->add_option("--omega", co->omega, "oscillator frequency for evolution");
        sub->add_option("--t", co->t, "evolution time");
        actions.emplace_back(sub, [=](std::ostream& os) {
            const cplx l1 = to_complex(co->lambda), z1 = to_complex(co->z);
            const cplx l2 = co->lambda2.empty() ? l1 : to_complex(co->lambda2);
            const cplx z2 = co->z2.empty() ? z1 : to_complex(co->z2);
            const auto s = fock::make_coherent(l1, z1, co->dim);
            const auto sp = fock::make_coherent(l2, z2, co->dim);
            const cplx trunc = fock::coherent_inner(sp, s, co->hbar);
            const cplx exact = fock::coherent_inner_exact(sp, s, co->hbar);
            const auto f = fock::build_fock(co->dim, co->hbar);
            const auto ev = fock::evolve(s, co->omega, co->t);
            emit_json(os, {{"inner_truncated", complex_json(trunc)},
                           {"inner_exact", complex_json(exact)},
                           {"abs_error", std::abs(trunc - exact)},
                           {"uncertainty_product", fock::uncertainty_product(f, s)},
                           {"evolved_z", complex_json(ev.z)}});
        });
    }

    // highest-weight
    struct HWOpts {
        double u = 0.0, v = 1.0, hbar = 1.0;
        std::optional<double> alpha;
        std::optional<std::size_t> jm;
        std::size_t max_levels = 200;
    };
    auto hw = std::make_shared<HWOpts>();
    {
        auto* sub = app.add_subcommand("highest-weight", "Rank-one highest-weight representation with "
                                                         "[a,a*] = hbar(u h + v): norm recursion and verdict");
        sub->add_option("--u", hw->u, "u");
        sub->add_option("--v", hw->v, "v");
        sub->add_option("--alpha", hw->alpha, "alpha (ground-state weight offset)");
        sub->add_option("--jm", hw->jm, "choose alpha so that a u < 0 representation has jm+1 levels");
        sub->add_option("--hbar", hw->hbar, "value of hbar");
        sub->add_option("--max-levels", hw->max_levels, "levels checked before declaring the verdict infinite");
        actions.emplace_back(sub, [=](std::ostream& os) {
            fock::HWData d{hw->u, hw->v, 0.0, hw->hbar};
            if (hw->jm) {
                if (!(hw->u < 0.0)) throw Error("bad_argument", "--jm requires u < 0");
                d.alpha = fock::finite_alpha(*hw->jm, hw->u, hw->v, hw->hbar);
            } else if (hw->alpha) {
                d.alpha = *hw->alpha;
            }
            const auto r = fock::build_highest_weight(d, hw->max_levels);
            std::vector<double> hdiag;
            for (std::size_t k = 0; k < r.dim; ++k) hdiag.push_back(r.h(k, k).real());
            json j{{"verdict", fock::to_string(r.verdict)}, {"alpha", d.alpha}, {"norms", r.norms}};
            j["dim"] = r.verdict == fock::HWVerdict::finite ? json(r.dim) : json(nullptr);
            j["h_spectrum"] = hdiag;
            emit_json(os, j);
        });
    }

    // fermion-check
    auto fm_modes = std::make_shared<std::size_t>(3);
    {
        auto* sub = app.add_subcommand("fermion-check", "Fermionic Fock space on n modes: canonical "
                                                        "anticommutation relations, sign identities and "
                                                        "occupation spectra");
        sub->add_option("--modes", *fm_modes, "number of modes (1..12)");
        actions.emplace_back(sub, [=](std::ostream& os) {
            const auto f = fermion::build_fermion(*fm_modes);
            const auto eps = fermion::check_epsilon_identities(std::min<std::size_t>(*fm_modes, 8));
            std::vector<double> occ;
            for (std::size_t j = 1; j <= f.n_modes; ++j) occ.push_back(number_op(f, j).trace().real());
            emit_json(os, {{"dim", f.dim},
                           {"car_residual", fermion::car_residual(f)},
                           {"epsilon_cases", eps.cases},
                           {"epsilon_failures", eps.failures},
                           {"number_traces", occ}});
        });
    }

    // irrep
    auto ir_j = std::make_shared<double>(0.5);
    auto ir_mats = std::make_shared<bool>(false);
    {
        auto* sub = app.add_subcommand("irrep", "su(2) irreducible representation D_j: t3, L+, L- and the "
                                                "Casimir J^2 = j(j+1)");
        sub->add_option("--j", *ir_j, "spin (integer or half-integer)");
        sub->add_flag("--matrices", *ir_mats, "include t3, L+ and L-");
        actions.emplace_back(sub, [=](std::ostream& os) {
            const auto r = su2::build_irrep(su2::twice_spin(*ir_j));
            const ComplexMatrix c = su2::casimir(r);
            const double jj = r.j() * (r.j() + 1.0);
            json j{{"j", r.j()},
                   {"dim", r.dim()},
                   {"casimir", jj},
                   {"casimir_defect", max_abs_diff(c, jj * ComplexMatrix::identity(r.dim()))}};
            if (*ir_mats) {
                j["t3"] = json_io::matrix_to_json(r.t3);
                j["Lplus"] = json_io::matrix_to_json(r.Lplus);
                j["Lminus"] = json_io::matrix_to_json(r.Lminus);
            }
            emit_json(os, j);
        });
    }

    // cg
    auto cg_k = std::make_shared<double>(0.5), cg_l = std::make_shared<double>(0.5);
    auto cg_iso = std::make_shared<bool>(false);
    {
        auto* sub = app.add_subcommand("cg", "Clebsch-Gordan decomposition D_k x D_l = D_{k+l} + ... + D_{|k-l|}");
        sub->add_option("--k", *cg_k, "first spin");
        sub->add_option("--l", *cg_l, "second spin");
        sub->add_flag("--isometry", *cg_iso, "include the isometry matrix");
        actions.emplace_back(sub, [=](std::ostream& os) {
            const int tk = su2::twice_spin(*cg_k), tl = su2::twice_spin(*cg_l);
            const auto res = su2::clebsch_gordan(tk, tl);
            json comps = json::array();
            std::size_t total = 0;
            for (const auto& c : res.components) {
                comps.push_back({{"j", 0.5 * c.two_j}, {"multiplicity", c.multiplicity}});
                total += static_cast<std::size_t>(c.multiplicity) * static_cast<std::size_t>(c.two_j + 1);
            }
            json j{{"components", comps},
                   {"dimension", total},
                   {"expected_dimension", static_cast<std::size_t>((tk + 1) * (tl + 1))}};
            if (*cg_iso) j["isometry"] = json_io::matrix_to_json(res.isometry);
            emit_json(os, j);
        });
    }

    // gibbs
    auto gb_h = std::make_shared<std::string>();
    auto gb_g = std::make_shared<std::string>();
    auto gb_beta = std::make_shared<double>(1.0);
    auto gb_kbar = std::make_shared<double>(1.0);
    {
        auto* sub = app.add_subcommand("gibbs", "Gibbs state of a Hermitian Hamiltonian: partition function, "
                                                "mean energy, entropy and an optional observable's value");
        sub->add_option("--H", *gb_h, "Hamiltonian as JSON rows or a JSON file path")->required();
        sub->add_option("--beta", *gb_beta, "inverse temperature 1/(kbar T)");
        sub->add_option("--observable", *gb_g, "observable as JSON rows or a JSON file path");
        sub->add_option("--kbar", *gb_kbar, "Boltzmann constant used for the entropy");
        actions.emplace_back(sub, [=](std::ostream& os) {
            const thermal::GibbsState st(json_io::matrix_from_json(json_arg(*gb_h)), *gb_beta);
            json j{{"log_Z", st.log_partition_function()},
                   {"mean_energy", st.mean_energy()},
                   {"entropy", st.entropy(*gb_kbar)},
                   {"energies", st.energies()},
                   {"probabilities", st.probabilities()}};
            j["Z"] = st.log_partition_function() <= 700.0 ? json(st.partition_function()) : json(nullptr);
            if (!gb_g->empty()) {
                const ComplexMatrix g = json_io::matrix_from_json(json_arg(*gb_g));
                j["value"] = complex_json(st.value(g));
            }
            emit_json(os, j);
        });
    }

    // blackbody
    struct BBOpts {
        double t = 5778.0, volume = 1.0, omega_min = 1e12, omega_max = 1e16;
        std::size_t points = 200;
        ConstantFlags consts;
    };
    auto bb = std::make_shared<BBOpts>();
    {
        auto* sub = app.add_subcommand("blackbody", "Planck spectral density f(omega) on a logarithmic "
                                                    "frequency grid; CSV omega,f_omega");
        sub->add_option("--T", bb->t, "temperature (K)");
        sub->add_option("--V", bb->volume, "cavity volume (m^3)");
        sub->add_option("--omega-min", bb->omega_min, "lowest angular frequency (rad/s)");
        sub->add_option("--omega-max", bb->omega_max, "highest angular frequency (rad/s)");
        sub->add_option("--points", bb->points, "number of grid points")->check(CLI::Range(2, 1000000));
        bb->consts.add_to(sub);
        actions.emplace_back(sub, [=](std::ostream& os) {
            const auto pc = bb->consts.get();
            if (!(bb->omega_min > 0.0) || !(bb->omega_max > bb->omega_min))
                throw Error("bad_argument", "need 0 < omega-min < omega-max");
            const double lo = std::log(bb->omega_min), hi = std::log(bb->omega_max);
            const auto old = os.precision(17);
            os << "omega,f_omega\n";
            for (std::size_t i = 0; i < bb->points; ++i) {
                const double w = std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bb->points - 1));
                os << w << ',' << thermal::planck_density(w, bb->t, bb->volume, pc) << '\n';
            }
            os.precision(old);
        });
    }

    // wien
    auto wn_t = std::make_shared<std::optional<double>>();
    auto wn_consts = std::make_shared<ConstantFlags>();
    {
        auto* sub = app.add_subcommand("wien", "Root x of 3 - x = 3 exp(-x) fixing the peak hbar omega = x kbar T "
                                               "of the Planck density");
        sub->add_option("--T", *wn_t, "also report the peak angular frequency at this temperature");
        wn_consts->add_to(sub);
        actions.emplace_back(sub, [=](std::ostream& os) {
            const auto r = thermal::wien_displacement_x();
            json j{{"x", r.x}, {"residual", r.residual}, {"iterations", r.iterations}};
            if (*wn_t) j["omega_max"] = thermal::wien_peak_omega(**wn_t, wn_consts->get());
            emit_json(os, j);
        });
    }

    // stefan
    auto st_consts = std::make_shared<ConstantFlags>();
    {
        auto* sub = app.add_subcommand("stefan", "Stefan constant pi^2 kbar^4 / (60 hbar^3 c^2) and the "
                                                 "integral of x^3/(e^x - 1)");
        st_consts->add_to(sub);
        actions.emplace_back(sub, [=](std::ostream& os) {
            const auto q = thermal::planck_integral();
            emit_json(os, {{"sigma", thermal::stefan_constant(st_consts->get())},
                           {"planck_integral", q.value},
                           {"planck_integral_error_bound", q.error_bound}});
        });
    }

    // rydberg
    auto ry_kmax = std::make_shared<int>(6);
    auto ry_rh = std::make_shared<double>(PhysicalConstants{}.R_H);
    {
        auto* sub = app.add_subcommand("rydberg", "Hydrogen lines R_H (1/k^2 - 1/l^2) as wavenumbers (1/m)");
        sub->add_option("--kmax", *ry_kmax, "largest principal quantum number");
        sub->add_option("--RH", *ry_rh, "Rydberg constant (1/m)");
        actions.emplace_back(sub, [=](std::ostream& os) {
            json arr = json::array();
            for (const auto& l : spectra::rydberg_lines(*ry_kmax, *ry_rh))
                arr.push_back({{"k", l.k}, {"l", l.l}, {"wavenumber", l.wavenumber}});
            emit_json(os, {{"lines", arr}});
        });
    }

    // assign
    struct AssignCli {
        std::string data, levels;
        double hbar = 1.0;
        spectra::AssignOptions opt;
        std::optional<std::uint64_t> seed;
    };
    auto as = std::make_shared<AssignCli>();
    {
        auto* sub = app.add_subcommand("assign", "Fit energy levels to observed lines by alternating "
                                                 "least-squares assignment; JSON {levels, assignments, objective}");
        sub->add_option("--data", as->data, "CSV with header omega,weight")->required();
        sub->add_option("--levels", as->levels, "initial levels: JSON array, {\"levels\": [...]} or file")->required();
        sub->add_option("--hbar", as->hbar, "value of hbar");
        sub->add_option("--max-iters", as->opt.max_iters, "iteration cap")->check(CLI::PositiveNumber);
        sub->add_option("--starts", as->opt.starts, "extra randomly perturbed starts");
        sub->add_option("--scale", as->opt.perturbation, "perturbation half-width for extra starts");
        sub->add_option("--seed", as->seed, "random seed (default: LIEQUANT_SEED or 0)");
        actions.emplace_back(sub, [=](std::ostream& os) {
            spectra::AssignOptions opt = as->opt;
            opt.seed = seed_or_env(as->seed, 0);
            const auto d = read_lines_csv(as->data);
            const auto sol = spectra::assign_lines(d, read_levels(as->levels), as->hbar, opt);
            json asg = json::array();
            for (std::size_t l = 0; l < sol.assignment.size(); ++l)
                asg.push_back({l, sol.assignment[l].j, sol.assignment[l].k});
            emit_json(os, {{"levels", sol.levels},
                           {"assignments", asg},
                           {"objective", sol.objective},
                           {"initial_objective", sol.initial_objective},
                           {"iterations", sol.iterations},
                           {"stop_reason", sol.stop_reason},
                           {"unidentifiable_levels", sol.unidentifiable_levels}});
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    try {
        for (auto& [sub, action] : actions) {
            if (!sub->parsed()) continue;
            if (out_path.empty()) {
                action(out);
            } else {
                std::ostringstream buf;
                action(buf);
                std::ofstream file(out_path);
                if (!file) throw Error("io_error", "cannot write " + out_path);
                file << buf.str();
            }
        }
    } catch (const CLI::ValidationError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.code() << '\n' << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: internal\n" << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace liequant::cli
