// naq - exact workbench for truncated deformation quantization:
// builds star products over rational polynomial algebras and certifies or
// refutes nearly-associative identities with monomial certificates.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "naq/naq.hpp"

namespace {

naq::SessionConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw naq::Error("cannot open config file '" + path + "'");
    naq::Json j = naq::Json::parse(in);
    std::string base;
    auto slash = path.find_last_of('/');
    if (slash != std::string::npos) base = path.substr(0, slash);
    return naq::parse_session_config(j, base);
}

void emit(const naq::Json& payload, const std::string& out_path) {
    std::string text = payload.dump(2);
    text.push_back('\n');
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw naq::Error("cannot write to '" + out_path + "'");
        out << text;
    }
}

int cmd_check(const std::string& config_path, const std::string& out_path) {
    naq::SessionConfig config = load_config(config_path);
    naq::Json report = naq::run_session(config);
    emit(report, out_path);
    return naq::report_all_hold(report) ? 0 : 1;
}

int cmd_jacobiator(const std::string& config_path, const std::string& out_path) {
    naq::SessionConfig config = load_config(config_path);
    naq::Bivector p = naq::build_bivector(config);
    naq::JacobiatorTensor t = naq::jacobiator_tensor(p);

    naq::Json out;
    out["engine"] = naq::Json{{"name", naq::kEngineName}, {"version", naq::kEngineVersion}};
    out["dimension"] = p.dim();
    naq::Json entries = naq::Json::array();
    for (int i = 0; i < p.dim(); ++i)
        for (int j = i + 1; j < p.dim(); ++j)
            for (int k = j + 1; k < p.dim(); ++k) {
                naq::Json rec;
                rec["i"] = i + 1;
                rec["j"] = j + 1;
                rec["k"] = k + 1;
                rec["expr"] = t.entry(i, j, k).str();
                entries.push_back(std::move(rec));
            }
    out["entries"] = std::move(entries);
    emit(out, out_path);
    return 0;
}

int cmd_eval(const std::string& config_path, const std::string& expr,
             const std::string& out_path) {
    naq::SessionConfig config = load_config(config_path);
    naq::Bivector p = naq::build_bivector(config);
    naq::StarProduct s = naq::build_product(config, p);

    naq::StarExprContext ctx;
    ctx.dim = config.dimension;
    ctx.truncation_order = config.truncation_order;
    ctx.product = &s;
    ctx.bivector = &p;
    naq::LambdaSeries value = naq::parse_star_expr(expr, ctx);

    naq::Json out;
    out["engine"] = naq::Json{{"name", naq::kEngineName}, {"version", naq::kEngineVersion}};
    out["expr"] = expr;
    out["value"] = value.str();
    naq::Json orders = naq::Json::array();
    for (int r = 0; r <= value.truncation_order(); ++r) orders.push_back(value.coefficient(r).str());
    out["orders"] = std::move(orders);
    emit(out, out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact identity certification for truncated star products"};
    app.require_subcommand(1);

    std::string config_path, out_path, expr;

    CLI::App* check = app.add_subcommand("check", "run bracket diagnostics and identity checks");
    check->add_option("config", config_path, "session config file (JSON)")->required();
    check->add_option("--out", out_path, "write the report to a file instead of stdout");

    CLI::App* jac = app.add_subcommand("jacobiator", "emit the Jacobiator tensor entries");
    jac->add_option("config", config_path, "session config file (JSON)")->required();
    jac->add_option("--out", out_path, "write the output to a file instead of stdout");

    CLI::App* ev = app.add_subcommand("eval", "evaluate a star expression");
    ev->add_option("config", config_path, "session config file (JSON)")->required();
    ev->add_option("--expr", expr, "expression to evaluate")->required();
    ev->add_option("--out", out_path, "write the output to a file instead of stdout");

    try {
        app.parse(argc, argv);
        if (check->parsed()) return cmd_check(config_path, out_path);
        if (jac->parsed()) return cmd_jacobiator(config_path, out_path);
        if (ev->parsed()) return cmd_eval(config_path, expr, out_path);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
