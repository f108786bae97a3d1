#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Result {
    int status;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name)
{
    const fs::path dir = fs::path(HANOI_TEST_TMP) / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

Result hnsearch(const std::string& args)
{
    const fs::path base = fs::path(HANOI_TEST_TMP);
    fs::create_directories(base);
    const fs::path out = base / "stdout.txt", err = base / "stderr.txt";
    // Run from the scratch dir so default outputs never land in the caller's cwd.
    const std::string cmd = "cd " + base.string() + " && " + std::string(HNSEARCH_BIN) + " " + args + " >" +
                            out.string() + " 2>" + err.string();
    const int raw = std::system(cmd.c_str());
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(out), slurp(err)};
}

std::size_t lines(const std::string& text)
{
    return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_CASE("topology writes the edge list")
{
    const fs::path dir = fresh_dir("topology");
    const Result r = hnsearch("topology --n 4 --mode chain --out-dir " + dir.string());
    CHECK(r.status == 0);
    const std::string edges = slurp(dir / "edges.csv");
    CHECK(edges.rfind("k,k_prime,class\n", 0) == 0);
    CHECK(lines(edges) == 33);
    std::size_t loops = 0;
    for (std::size_t at = edges.find(",loop"); at != std::string::npos; at = edges.find(",loop", at + 1)) ++loops;
    CHECK(loops == 2);
    CHECK(fs::exists(dir / "manifest.csv"));
}

TEST_CASE("topology in paired mode doubles level edges")
{
    const Result r = hnsearch("topology --n 2 --mode paired --out -");
    CHECK(r.status == 0);
    std::size_t doubled = 0;
    for (std::size_t at = r.out.find("1,3,level"); at != std::string::npos; at = r.out.find("1,3,level", at + 1)) {
        ++doubled;
    }
    CHECK(doubled == 2);
}

TEST_CASE("topology --n 1 is a usage error")
{
    const Result r = hnsearch("topology --n 1 --out -");
    CHECK(r.status == 1);
    CHECK(r.err.find("level count") != std::string::npos);
}

TEST_CASE("run writes series, report and manifest")
{
    const fs::path dir = fresh_dir("run");
    const Result r = hnsearch("run --method modified --epsilon 0.75 --n 10 --out-dir " + dir.string());
    CHECK(r.status == 0);
    CHECK(r.out.find("t_f=") != std::string::npos);
    const std::string series = slurp(dir / "series.csv");
    CHECK(series.rfind("t,p_marked\n0,0.0009765625\n", 0) == 0);
    CHECK(lines(series) == 1 + 1088);
    const std::string report = slurp(dir / "report.csv");
    CHECK(report.rfind("method,mode,n,N,k0,epsilon,cos_delta,t_f,p_f,cost_single,cost_total\n", 0) == 0);
    CHECK(report.find("\nmodified,paired,10,1024,3,0.75,,") != std::string::npos);
    const std::string manifest = slurp(dir / "manifest.csv");
    CHECK(manifest.rfind("timestamp,command,version,parameters,outputs,wall_seconds,exit_status\n", 0) == 0);
    CHECK(manifest.find(",run,") != std::string::npos);
    CHECK(manifest.find("--method modified") != std::string::npos);
    CHECK(manifest.find("--epsilon 0.75") != std::string::npos);
}

TEST_CASE("abstract with epsilon != 1 is rejected")
{
    const Result r = hnsearch("run --method abstract --epsilon 0.9 --n 6 --out-dir " + fresh_dir("abs").string());
    CHECK(r.status == 1);
}

TEST_CASE("no peak exits with 2 and still writes the series")
{
    const fs::path dir = fresh_dir("nopeak");
    const Result r = hnsearch("run --method modified --epsilon 2 --n 6 --out-dir " + dir.string());
    CHECK(r.status == 2);
    CHECK(fs::exists(dir / "series.csv"));
    CHECK_FALSE(fs::exists(dir / "report.csv"));
}

TEST_CASE("dump-state writes the final state")
{
    const fs::path dir = fresh_dir("dump");
    const Result r = hnsearch("--dump-state " + (dir / "state.csv").string() +
                              " run --method tulsi --n 4 --out-dir " + dir.string());
    CHECK(r.status == 0);
    const std::string state = slurp(dir / "state.csv");
    CHECK(state.rfind("ancilla,coin,vertex,re,im\n", 0) == 0);
    CHECK(lines(state) == 1 + 2 * 4 * 16);
    CHECK(hnsearch("--dump-state x.csv topology --n 3 --out -").status == 1);
}

TEST_CASE("tulsi run beats modified on success probability")
{
    const fs::path dir = fresh_dir("tulsi");
    CHECK(hnsearch("run --method tulsi --n 10 --out-dir " + dir.string()).status == 0);
    const std::string report = slurp(dir / "report.csv");
    CHECK(report.find("\ntulsi,paired,10,1024,3,1,0.1,") != std::string::npos);
}

TEST_CASE("sweep then fit")
{
    const fs::path dir = fresh_dir("sweep");
    const Result s = hnsearch("sweep --variable size --method tulsi --n-values 5,6,7,8,9 --jobs 2 --out-dir " +
                              dir.string());
    CHECK(s.status == 0);
    const std::string table = slurp(dir / "sweep.csv");
    CHECK(table.rfind("sweep_variable,value,method,", 0) == 0);
    CHECK(lines(table) == 6);

    const Result f = hnsearch("fit --in " + (dir / "sweep.csv").string() + " --y cost_single --out-dir " +
                              dir.string());
    CHECK(f.status == 0);
    const std::string fit = slurp(dir / "fit.csv");
    CHECK(fit.rfind("prefactor,exponent,r_squared,points_used\n", 0) == 0);
    CHECK(fit.find(",5\n") != std::string::npos);
}

TEST_CASE("sweeps are byte-identical across runs and job counts")
{
    const fs::path a = fresh_dir("det_a"), b = fresh_dir("det_b");
    CHECK(hnsearch("sweep --variable epsilon --method modified --n 7 --epsilons 0.5,0.75,1 --jobs 1 --out-dir " +
                   a.string()).status == 0);
    CHECK(hnsearch("sweep --variable epsilon --method modified --n 7 --epsilons 0.5,0.75,1 --jobs 3 --out-dir " +
                   b.string()).status == 0);
    CHECK(slurp(a / "sweep.csv") == slurp(b / "sweep.csv"));
}

TEST_CASE("sweep with a no-peak row exits 2 and flags the row")
{
    const fs::path dir = fresh_dir("sweep_np");
    const Result r = hnsearch("sweep --variable epsilon --method modified --n 6 --epsilons 1,2 --out-dir " +
                              dir.string());
    CHECK(r.status == 2);
    CHECK(slurp(dir / "sweep.csv").find(",no_peak\n") != std::string::npos);
}

TEST_CASE("fit errors")
{
    const fs::path dir = fresh_dir("fit_err");
    {
        std::ofstream t(dir / "two.csv");
        t << "n,N,y\n5,32,1\n6,64,2\n";
        std::ofstream m(dir / "bad.csv");
        m << "n,N,y\n5,32,1\n6,64\n";
    }
    const Result two = hnsearch("fit --in " + (dir / "two.csv").string() + " --y y --out -");
    CHECK(two.status == 1);
    CHECK(two.err.find("at least 3") != std::string::npos);
    const Result bad = hnsearch("fit --in " + (dir / "bad.csv").string() + " --y y --out -");
    CHECK(bad.status == 3);
    CHECK(bad.err.find("line 3") != std::string::npos);
    CHECK(hnsearch("fit --in " + (dir / "missing.csv").string() + " --out -").status == 3);
}

TEST_CASE("config file supplies flags and the command line overrides it")
{
    const fs::path dir = fresh_dir("config");
    {
        std::ofstream cfg(dir / "run.cfg");
        cfg << "# search run\ncommand = run\nmethod = modified\nepsilon = 0.5\nn = 6\nout_dir = " << dir.string()
            << "\nmode = chain\n";
    }
    CHECK(hnsearch("--config " + (dir / "run.cfg").string()).status == 0);
    CHECK(slurp(dir / "report.csv").find("\nmodified,chain,6,64,3,0.5,,") != std::string::npos);

    CHECK(hnsearch("run --config " + (dir / "run.cfg").string() + " --epsilon 0.75").status == 0);
    CHECK(slurp(dir / "report.csv").find("\nmodified,chain,6,64,3,0.75,,") != std::string::npos);

    {
        std::ofstream bad(dir / "bad.cfg");
        bad << "command = run\nthis line has no equals\n";
    }
    CHECK(hnsearch("--config " + (dir / "bad.cfg").string()).status == 3);
}

TEST_CASE("usage errors")
{
    CHECK(hnsearch("").status == 1);
    CHECK(hnsearch("run --method grover").status == 1);
    CHECK(hnsearch("run --n").status == 1);
    CHECK(hnsearch("--help").status == 0);
}
