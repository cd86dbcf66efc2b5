#include "crpinv/cli.hpp"

#include <chrono>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crpinv/bench.hpp"
#include "crpinv/cr.hpp"
#include "crpinv/matrix_io.hpp"
#include "crpinv/pinv.hpp"
#include "crpinv/sketch.hpp"

namespace crpinv
{
namespace
{

enum class Domain
{
    Rational,
    Float
};

const std::map<std::string, Domain> domain_names{{"rational", Domain::Rational}, {"float", Domain::Float}};

template <Scalar T>
Matrix<T> load(const std::string& path)
{
    if constexpr (is_exact_v<T>)
        return load_rational_matrix(path);
    else
        return load_float_matrix(path);
}

template <Scalar T>
void print_matrix(std::ostream& out, const Matrix<T>& a)
{
    if constexpr (is_exact_v<T>)
        write_rational_text(out, a);
    else
        write_matrix_market(out, a);
}

const char* yes_no(bool b) { return b ? "true" : "false"; }

template <Scalar T>
void print_penrose(std::ostream& out, const PenroseReport& rep)
{
    static constexpr const char* names[] = {"AGA=A", "GAG=G", "(GA)^T=GA", "(AG)^T=AG"};
    out << "penrose:";
    for (std::size_t k = 0; k < 4; ++k) {
        out << ' ' << names[k] << '=' << yes_no(rep.holds[k]);
        if constexpr (!is_exact_v<T>)
            out << '(' << format_double(rep.residuals[k]) << ')';
    }
    out << " all=" << yes_no(rep.all()) << '\n';
}

template <Scalar T>
void cmd_factorize(std::ostream& out, const std::string& file)
{
    const auto a = load<T>(file);
    const auto f = cr_factorize(a);
    out << "rank: " << f.rank << "\npivot_cols:";
    for (auto p : f.pivot_cols)
        out << ' ' << p;
    out << "\nC:\n";
    print_matrix(out, f.c);
    out << "R:\n";
    print_matrix(out, f.r_factor);
}

template <Scalar T>
void cmd_pinv(std::ostream& out, const std::string& file, const std::string& right_file, const std::string& method)
{
    const auto first = load<T>(file);
    Matrix<T> a, g;
    if (!right_file.empty()) {
        if (method != "always")
            throw std::invalid_argument("--right requires --method always");
        const auto r = load<T>(right_file);
        a = first * r;
        g = pinv_always(first, r);
    } else {
        a = first;
        const auto f = cr_factorize(a);
        if (method == "reverse-order")
            g = pinv_reverse_order(f);
        else if (method == "closed-form")
            g = pinv_rational_closed_form(f, a);
        else
            g = pinv_always(f.c, f.r_factor);
    }
    print_matrix(out, g);
    print_penrose<T>(out, check_penrose(a, g));
}

template <Scalar T>
void cmd_check_penrose(std::ostream& out, const std::string& a_file, const std::string& g_file, double tol)
{
    print_penrose<T>(out, check_penrose(load<T>(a_file), load<T>(g_file), tol));
}

template <Scalar T>
void cmd_check_greville(std::ostream& out, const std::string& c_file, const std::string& r_file, double tol)
{
    const auto c = load<T>(c_file);
    const auto r = load<T>(r_file);
    const bool greville = check_greville(c, r);
    const auto [demand1, demand2] = check_reverse_order_demands(c, r, tol);
    const auto reverse = Matrix<T>(pinv_via_cr(r) * pinv_via_cr(c));
    const auto always = pinv_always(c, r);
    bool agree;
    if constexpr (is_exact_v<T>)
        agree = reverse == always;
    else
        agree = relative_error(reverse, always) <= tol;

    out << "greville: " << yes_no(greville) << '\n'
        << "projection_equation: " << yes_no(check_projection_equation(c, r, tol)) << '\n'
        << "reverse_order_demands: " << yes_no(demand1) << ' ' << yes_no(demand2) << '\n'
        << "reverse_order_law_holds: " << yes_no(agree) << '\n';
}

void cmd_rpinv(std::ostream& out, const std::string& file, std::size_t p, std::size_t q, std::uint64_t seed,
               bool validate)
{
    const auto a = load_float_matrix(file);
    const auto res = rpinv(a, p, q, seed);
    print_matrix(out, res.approx);
    out << "rank(P^T A): " << res.achieved_ranks[0] << "\nrank(A Q): " << res.achieved_ranks[1]
        << "\nrank(A): " << res.achieved_ranks[2] << "\nrank_preserving: " << yes_no(res.rank_preserving) << '\n';
    if (validate) {
        const double err = relative_error(res.approx, svd_pinv(a));
        out << "relative_error_vs_svd: " << format_double(err) << '\n';
        print_penrose<double>(out, check_penrose(a, res.approx, 1e-8));
    }
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Moore-Penrose pseudoinverses through the CR factorization"};
    app.name("crpinv");
    app.require_subcommand(1);

    Domain domain = Domain::Rational;
    double tol = default_tolerance;

    std::string factorize_file;
    auto* factorize = app.add_subcommand("factorize", "CR factorization: C, R, rank and pivot columns");
    factorize->add_option("matrix-file", factorize_file)->required()->check(CLI::ExistingFile);
    factorize->add_option("--domain", domain)->transform(CLI::CheckedTransformer(domain_names, CLI::ignore_case));

    std::string pinv_file, pinv_right, pinv_method = "reverse-order";
    auto* pinv = app.add_subcommand("pinv", "pseudoinverse by one of the CR formulas");
    pinv->add_option("matrix-file", pinv_file, "A, or C when --right is given")->required()->check(CLI::ExistingFile);
    pinv->add_option("--method", pinv_method)->check(CLI::IsMember({"reverse-order", "closed-form", "always"}));
    pinv->add_option("--domain", domain)->transform(CLI::CheckedTransformer(domain_names, CLI::ignore_case));
    pinv->add_option("--right", pinv_right, "R factor; the pseudoinverse of C*R is computed")
        ->check(CLI::ExistingFile);

    auto* check = app.add_subcommand("check", "verify Penrose or Greville conditions");
    check->require_subcommand(1);
    std::string penrose_a, penrose_g;
    auto* penrose = check->add_subcommand("penrose", "four Penrose identities for A and G");
    penrose->add_option("A-file", penrose_a)->required()->check(CLI::ExistingFile);
    penrose->add_option("G-file", penrose_g)->required()->check(CLI::ExistingFile);
    penrose->add_option("--tol", tol)->check(CLI::PositiveNumber);
    penrose->add_option("--domain", domain)->transform(CLI::CheckedTransformer(domain_names, CLI::ignore_case));
    std::string greville_c, greville_r;
    auto* greville = check->add_subcommand("greville", "reverse-order law conditions for C and R");
    greville->add_option("C-file", greville_c)->required()->check(CLI::ExistingFile);
    greville->add_option("R-file", greville_r)->required()->check(CLI::ExistingFile);
    greville->add_option("--tol", tol)->check(CLI::PositiveNumber);
    greville->add_option("--domain", domain)->transform(CLI::CheckedTransformer(domain_names, CLI::ignore_case));

    std::string rpinv_file;
    std::size_t rp = 0, rq = 0;
    std::uint64_t rseed = 0;
    bool rvalidate = false;
    auto* rp_cmd = app.add_subcommand("rpinv", "randomized sketched pseudoinverse (float domain)");
    rp_cmd->add_option("matrix-file", rpinv_file)->required()->check(CLI::ExistingFile);
    rp_cmd->add_option("--p", rp, "rows of the left sketch")->required();
    rp_cmd->add_option("--q", rq, "columns of the right sketch")->required();
    rp_cmd->add_option("--seed", rseed)->required();
    rp_cmd->add_flag("--validate", rvalidate, "compare against the SVD pseudoinverse");

    BenchConfig config;
    std::string bench_out = "results.csv", plot_data, methods_csv;
    auto* bench = app.add_subcommand("bench", "time rpinv, rsvd and direct pseudoinverses on randsvd matrices");
    bench->add_option("--sizes", config.sizes)->delimiter(',');
    bench->add_option("--alpha", config.alpha);
    bench->add_option("--cond", config.condition);
    bench->add_option("--trials", config.trials);
    bench->add_option("--seed", config.seed);
    bench->add_option("--out", bench_out);
    bench->add_option("--methods", methods_csv, "comma-separated subset of rpinv,rsvd,direct");
    bench->add_option("--plot-data", plot_data, "write per-method medians to this CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "crpinv: " << e.what() << '\n';
        return 2;
    }

    const bool rational = domain == Domain::Rational;
    try {
        if (*factorize) {
            rational ? cmd_factorize<Rational>(out, factorize_file) : cmd_factorize<double>(out, factorize_file);
        } else if (*pinv) {
            rational ? cmd_pinv<Rational>(out, pinv_file, pinv_right, pinv_method)
                     : cmd_pinv<double>(out, pinv_file, pinv_right, pinv_method);
        } else if (*penrose) {
            rational ? cmd_check_penrose<Rational>(out, penrose_a, penrose_g, tol)
                     : cmd_check_penrose<double>(out, penrose_a, penrose_g, tol);
        } else if (*greville) {
            rational ? cmd_check_greville<Rational>(out, greville_c, greville_r, tol)
                     : cmd_check_greville<double>(out, greville_c, greville_r, tol);
        } else if (*rp_cmd) {
            cmd_rpinv(out, rpinv_file, rp, rq, rseed, rvalidate);
        } else if (*bench) {
            if (!methods_csv.empty()) {
                config.methods.clear();
                std::istringstream ss(methods_csv);
                std::string name;
                while (std::getline(ss, name, ','))
                    config.methods.push_back(parse_bench_method(name));
            }
            config.validate();
            const auto records = run_bench(config);
            emit_csv(records, bench_out);
            const auto summary = summarize(records);
            if (!plot_data.empty())
                emit_plot_data(summary, plot_data);
            for (const auto& s : summary)
                out << s.method << " n=" << s.n << " median_time=" << format_double(s.median_wall_time_seconds)
                    << "s median_relative_error=" << format_double(s.median_relative_error) << '\n';
            out << "wrote " << records.size() << " records to " << bench_out << '\n';
        }
    } catch (const std::invalid_argument& e) {
        err << "crpinv: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "crpinv: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace crpinv
