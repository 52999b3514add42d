#include "emopt/benchmarks.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace emopt::bench {

namespace {

using std::numbers::pi;

constexpr std::array<double, 4> kHartmannAlpha{1.0, 1.2, 3.0, 3.2};

// Standard Dixon-Szego Hartmann coefficient tables.
constexpr double kHartmann3A[4][3] = {
    {3.0, 10.0, 30.0}, {0.1, 10.0, 35.0}, {3.0, 10.0, 30.0}, {0.1, 10.0, 35.0}};
constexpr double kHartmann3P[4][3] = {{0.3689, 0.1170, 0.2673},
                                      {0.4699, 0.4387, 0.7470},
                                      {0.1091, 0.8732, 0.5547},
                                      {0.0381, 0.5743, 0.8828}};
constexpr double kHartmann6A[4][6] = {{10.0, 3.0, 17.0, 3.5, 1.7, 8.0},
                                      {0.05, 10.0, 17.0, 0.1, 8.0, 14.0},
                                      {3.0, 3.5, 1.7, 10.0, 17.0, 8.0},
                                      {17.0, 8.0, 0.05, 10.0, 0.1, 14.0}};
constexpr double kHartmann6P[4][6] = {{0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886},
                                      {0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991},
                                      {0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650},
                                      {0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381}};

constexpr double kShekelC[10][4] = {{4.0, 4.0, 4.0, 4.0}, {1.0, 1.0, 1.0, 1.0},
                                    {8.0, 8.0, 8.0, 8.0}, {6.0, 6.0, 6.0, 6.0},
                                    {3.0, 7.0, 3.0, 7.0}, {2.0, 9.0, 2.0, 9.0},
                                    {5.0, 5.0, 3.0, 3.0}, {8.0, 1.0, 8.0, 1.0},
                                    {6.0, 2.0, 6.0, 2.0}, {7.0, 3.6, 7.0, 3.6}};
// 1/10 scaling of the printed beta column.
constexpr double kShekelBeta[10] = {0.1, 0.2, 0.2, 0.4, 0.4, 0.6, 0.3, 0.7, 0.5, 0.5};

template <std::size_t N>
double hartmann(std::span<const double> x, const double (&a)[4][N], const double (&p)[4][N]) {
    double sum = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        double inner = 0.0;
        for (std::size_t j = 0; j < N; ++j) {
            const double d = x[j] - p[i][j];
            inner += a[i][j] * d * d;
        }
        sum += kHartmannAlpha[i] * std::exp(-inner);
    }
    return -sum;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

double penalty_u(double x, double a, double k, double m) {
    if (x > a) return k * std::pow(x - a, m);
    if (x < -a) return k * std::pow(-x - a, m);
    return 0.0;
}

double branin(std::span<const double> x) {
    const double x1 = x[0], x2 = x[1];
    // 5.1/(4 pi^2) is the standard coefficient; the (pi, 2.275) minimizer needs it.
    const double t = x2 - 5.1 / (4.0 * pi * pi) * x1 * x1 + 5.0 / pi * x1 - 6.0;
    return t * t + 10.0 * (1.0 - 1.0 / (8.0 * pi)) * std::cos(x1) + 10.0;
}

double six_hump_camel(std::span<const double> x) {
    const double x1 = x[0], x2 = x[1];
    const double x1sq = x1 * x1, x2sq = x2 * x2;
    return (4.0 - 2.1 * x1sq + x1sq * x1sq / 3.0) * x1sq + x1 * x2 + (-4.0 + 4.0 * x2sq) * x2sq;
}

double goldstein_price(std::span<const double> x) {
    const double x1 = x[0], x2 = x[1];
    const double s = x1 + x2 + 1.0;
    const double a = 1.0 + s * s *
                               (19.0 - 14.0 * x1 + 3.0 * x1 * x1 - 14.0 * x2 + 6.0 * x1 * x2 +
                                3.0 * x2 * x2);
    const double t = 2.0 * x1 - 3.0 * x2;
    const double b = 30.0 + t * t *
                                (18.0 - 32.0 * x1 + 12.0 * x1 * x1 + 48.0 * x2 - 36.0 * x1 * x2 +
                                 27.0 * x2 * x2);
    return a * b;
}

double hartmann3(std::span<const double> x) { return hartmann(x, kHartmann3A, kHartmann3P); }
double hartmann6(std::span<const double> x) { return hartmann(x, kHartmann6A, kHartmann6P); }

double shekel(std::span<const double> x, int terms) {
    if (terms < 1 || terms > 10) throw std::invalid_argument("shekel: terms must be in 1..10");
    double sum = 0.0;
    for (int j = 0; j < terms; ++j) {
        double dist = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            const double d = x[i] - kShekelC[j][i];
            dist += d * d;
        }
        sum += 1.0 / (dist + kShekelBeta[j]);
    }
    return -sum;
}

double shubert(std::span<const double> x) {
    double a = 0.0, b = 0.0;
    for (int i = 1; i <= 5; ++i) {
        a += i * std::cos((i + 1) * x[0] + i);
        b += i * std::cos((i + 1) * x[1] + i);
    }
    return a * b;
}

double rastrigin(std::span<const double> x) {
    double sum = 0.0;
    for (double xi : x) sum += xi * xi - 10.0 * std::cos(2.0 * pi * xi) + 10.0;
    return sum;
}

double ackley(std::span<const double> x) {
    const double n = static_cast<double>(x.size());
    double sq = 0.0, cs = 0.0;
    for (double xi : x) {
        sq += xi * xi;
        cs += std::cos(2.0 * pi * xi);
    }
    // The +e term makes f(0) = 0.
    return -20.0 * std::exp(-0.2 * std::sqrt(sq / n)) - std::exp(cs / n) + 20.0 + std::numbers::e;
}

double griewank(std::span<const double> x) {
    double sq = 0.0, prod = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sq += x[i] * x[i];
        prod *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
    }
    return sq / 4000.0 - prod + 1.0;
}

double penalized1(std::span<const double> x) {
    const std::size_t n = x.size();
    auto y = [&](std::size_t i) { return 1.0 + (x[i] + 1.0) / 4.0; };
    const double s0 = std::sin(pi * y(0));
    double sum = 10.0 * s0 * s0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double yi = y(i) - 1.0;
        const double s = std::sin(pi * y(i + 1));
        sum += yi * yi * (1.0 + 10.0 * s * s);
    }
    const double yn = y(n - 1) - 1.0;
    sum += yn * yn;
    double penalty = 0.0;
    for (double xi : x) penalty += penalty_u(xi, 10.0, 100.0, 4.0);
    return pi / static_cast<double>(n) * sum + penalty;
}

double penalized2(std::span<const double> x) {
    const std::size_t n = x.size();
    const double s0 = std::sin(3.0 * pi * x[0]);
    double sum = s0 * s0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double d = x[i] - 1.0;
        const double s = std::sin(3.0 * pi * x[i + 1]);
        sum += d * d * (1.0 + s * s);
    }
    const double dn = x[n - 1] - 1.0;
    const double sn = std::sin(2.0 * pi * x[n - 1]);
    sum += dn * dn * (1.0 + sn * sn);
    double penalty = 0.0;
    for (double xi : x) penalty += penalty_u(xi, 5.0, 100.0, 4.0);
    return 0.1 * sum + penalty;
}

Objective BenchmarkEntry::objective() const {
    return Objective(id, space, evaluator, canonical_minimum);
}

const std::vector<BenchmarkEntry>& registry() {
    static const std::vector<BenchmarkEntry> entries = [] {
        constexpr std::size_t kHighDim = 30;
        std::vector<BenchmarkEntry> e;
        e.push_back({"f1", "branin", "Branin", SearchSpace({-5.0, 0.0}, {10.0, 15.0}),
                     branin, 0.397887, 0.39788735772973816, {pi, 2.275}, std::nullopt});
        e.push_back({"f2", "camel", "Six-Hump Camel-Back", SearchSpace::uniform(2, -2.0, 2.0),
                     six_hump_camel, -1.031, -1.0316284534898774,
                     {0.08984200893527233, -0.712656403019058}, std::nullopt});
        e.push_back({"f3", "goldstein_price", "Goldstein-Price",
                     SearchSpace::uniform(2, -2.0, 2.0), goldstein_price, 3.0, 3.0, {0.0, -1.0},
                     std::nullopt});
        e.push_back({"f4", "hartmann3", "Hartmann 3-D", SearchSpace::uniform(3, 0.0, 1.0),
                     hartmann3, -3.8627, -3.86278214782076, {0.114614, 0.555649, 0.852547},
                     std::nullopt});
        e.push_back({"f5", "hartmann6", "Hartmann 6-D", SearchSpace::uniform(6, 0.0, 1.0),
                     hartmann6, -3.8623, -3.322368011415515,
                     {0.20168951209480995, 0.15001069277685197, 0.476873971833793,
                      0.275332431065528, 0.3116516179851896, 0.657300535855056},
                     "published minimum -3.8623 repeats the 3-D value; the 6-D function attains "
                     "-3.3224"});
        e.push_back({"f6", "shekel5", "Shekel m=5", SearchSpace::uniform(4, 0.0, 10.0),
                     [](std::span<const double> x) { return shekel(x, 5); }, -10.1532,
                     -10.153199679058229,
                     {4.000037152376549, 4.000133278657566, 4.000037151057555, 4.000133277090425},
                     std::nullopt});
        e.push_back({"f7", "shekel7", "Shekel m=7", SearchSpace::uniform(4, 0.0, 10.0),
                     [](std::span<const double> x) { return shekel(x, 7); }, -10.4029,
                     -10.402940566818662,
                     {4.000572914277084, 4.000689366040889, 3.9994897107938447,
                      3.9996061600067923},
                     std::nullopt});
        e.push_back({"f8", "shekel10", "Shekel m=10", SearchSpace::uniform(4, 0.0, 10.0),
                     [](std::span<const double> x) { return shekel(x, 10); }, -10.5364,
                     -10.536409816692045,
                     {4.000746530253313, 4.000592936779709, 3.9996633957714787,
                      3.9995097993299975},
                     std::nullopt});
        e.push_back({"f9", "shubert", "Shubert", SearchSpace::uniform(2, -10.0, 10.0), shubert,
                     -186.73, -186.73090883102392, {-7.083506409397382, 4.858056877022195},
                     std::nullopt});
        e.push_back({"f10", "rastrigin", "Rastrigin",
                     SearchSpace::uniform(kHighDim, -5.12, 5.12), rastrigin, 0.0, 0.0,
                     Vector(kHighDim, 0.0), std::nullopt});
        e.push_back({"f11", "ackley", "Ackley", SearchSpace::uniform(kHighDim, -32.0, 32.0),
                     ackley, 0.0, 0.0, Vector(kHighDim, 0.0), std::nullopt});
        e.push_back({"f12", "griewank", "Griewank", SearchSpace::uniform(kHighDim, -600.0, 600.0),
                     griewank, 0.0, 0.0, Vector(kHighDim, 0.0), std::nullopt});
        e.push_back({"f13", "penalized1", "Generalized Penalized 1",
                     SearchSpace::uniform(kHighDim, -50.0, 50.0), penalized1, 0.0, 0.0,
                     Vector(kHighDim, -1.0), std::nullopt});
        e.push_back({"f14", "penalized2", "Generalized Penalized 2",
                     SearchSpace::uniform(kHighDim, -50.0, 50.0), penalized2, 0.0, 0.0,
                     Vector(kHighDim, 1.0), std::nullopt});
        return e;
    }();
    return entries;
}

const BenchmarkEntry* find(std::string_view key) {
    const std::string k = lower(key);
    for (const auto& e : registry()) {
        if (e.id == k || e.name == k) return &e;
    }
    return nullptr;
}

const BenchmarkEntry& get(std::string_view key) {
    if (const auto* e = find(key)) return *e;
    throw std::invalid_argument("unknown benchmark function: " + std::string(key));
}

}  // namespace emopt::bench
