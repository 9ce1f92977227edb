"""Regenerates tests/tuning_reference.hpp with 50-digit mpmath evaluations."""
from mpmath import mp, mpf, sqrt, log, exp, e

mp.dps = 50


def r_binary(n, m, delta, k=1):
    return 2 * sqrt(2 * log(2 * k * m / delta) / n)


def r_real(n, m, delta, L, sigma, k=1):
    t = log(4 * k * m / delta)
    return max(4 * L * sigma * sqrt(t / n), 8 * L * t / n)


def r_logistic(n, m, delta, L, k=None):
    mn = max(m, n)
    conf = 1 / delta if k is None else 2 * m / delta
    return (6 + 4 * sqrt(2)) * L * sqrt(2 * log(2 * mn) / n) + 2 * L * sqrt(2 * log(conf) / n) + 1 / (4 * mn)


def eps(n, m, r):
    return log(2) / mpf(2) ** (max(m, n) + 1) / r


def s_const(L, D):
    return (1 + exp(6 * L * D)) ** -4


rows = [
    ("r_binary_800_100", "r_for(lasso_ls, binary, n=800, M=100, delta=0.05)", r_binary(800, 100, mpf("0.05"))),
    ("r_binary_log3", "r_for(lasso_ls, binary, n=6, M=1, delta=2/e^3)", r_binary(6, 1, 2 / e**3)),
    ("r_real_10000_50", "r_for(lasso_ls, real, n=10000, M=50, delta=0.05, L=1, sigma=1)",
     r_real(10000, 50, mpf("0.05"), 1, 1)),
    ("r_real_bernstein_branch", "r_for(enet_ls, real, n=50, M=50, delta=0.05, L=1, sigma=0.1)",
     r_real(50, 50, mpf("0.05"), 1, mpf("0.1"))),
    ("r_logistic_4000_200", "r_for(lasso_logistic, n=4000, M=200, delta=0.05, L=1)",
     r_logistic(4000, 200, mpf("0.05"), 1)),
    ("r_binary_selection", "r_for(lasso_ls, binary, n=800, M=20, delta=0.05, K=3)",
     r_binary(800, 20, mpf("0.05"), 3)),
    ("r_logistic_selection", "r_for(enet_logistic, n=2000, M=20, delta=0.05, L=1.2, K=2)",
     r_logistic(2000, 20, mpf("0.05"), mpf("1.2"), 2)),
    ("eps_small", "epsilon_tech(n=3, M=1, r=0.5)", eps(3, 1, mpf("0.5"))),
    ("eps_cancel", "epsilon_tech(n=1, M=1, r=ln 2)", eps(1, 1, log(2))),
    ("eps_50", "epsilon_tech(n=50, M=20, r=0.3)", eps(50, 20, mpf("0.3"))),
    ("c_for", "c_for(r=0.3, B=1.5)", mpf("0.3") / (2 * mpf("1.5"))),
    ("c_for_selection", "c_for_selection_logistic(r=0.3, B=1.5)", 2 * mpf("0.3") / mpf("1.5")),
    ("s_zero", "s_const(L=1, D=0)", s_const(1, 0)),
    ("s_one", "s_const(L=1, D=1)", s_const(1, 1)),
    ("radius_lasso_ls", "ball_radius(lasso_ls, r=0.1, k=3, b=0.5)", 4 * mpf("0.1") * 3 / mpf("0.5")),
    ("radius_enet_ls", "ball_radius(enet_ls, r=0.2, c=0.1, k=3, b=0.6)",
     mpf("4.25") * mpf("0.2") * 3 / (mpf("0.6") + mpf("0.1"))),
    ("radius_lasso_logistic", "ball_radius(lasso_logistic, r=0.3, k=2, b=0.7, s=0.01, eps=0.001)",
     4 * mpf("0.3") * 2 / (mpf("0.01") * mpf("0.7")) + (1 + 1 / mpf("0.3")) * mpf("0.001")),
    ("radius_enet_logistic", "ball_radius(enet_logistic, r=0.3, c=0.05, k=2, b=0.7, s=0.01, eps=0.001)",
     mpf("4.25") * mpf("0.3") * 2 / (mpf("0.01") * mpf("0.7") + mpf("0.05")) + (1 + 1 / mpf("0.3")) * mpf("0.001")),
    ("weak_lasso_logistic", "signal_threshold(lasso_logistic, weak, r=0.2, eps=0.01)",
     mpf("3.5") * mpf("0.2") + 3 * (1 + 1 / mpf("0.2")) * mpf("0.01")),
    ("weak_enet_logistic", "signal_threshold(enet_logistic, weak, r=0.2, eps=0.01)",
     mpf("3.5") * mpf("0.2") + (1 + 1 / mpf("0.2")) * mpf("0.01")),
    ("d_lasso_ls", "d_limit(lasso_ls)", 1 / mpf(15)),
    ("d_enet_ls", "d_limit(enet_ls, c=0.75)", (1 + mpf("0.75")) / mpf("17.5")),
    ("d_lasso_logistic", "d_limit(lasso_logistic, s=0.3, eps=0.01)",
     mpf("0.3") / (16 + 2 * mpf("0.3") * (7 + mpf("0.01")))),
    ("d_enet_logistic", "d_limit(enet_logistic, s=0.3, c=0.2, eps=0.01)",
     (mpf("0.3") + mpf("0.2")) / (17 + 2 * mpf("0.3") * (8 + mpf("0.01")))),
    ("lidentif_radius", "lidentif_radius(L=1.2, r=0.3, k=2, s=0.5, b=0.8, eps=0.001)",
     4 * mpf("1.2") * mpf("0.3") * 2 / (mpf("0.5") * mpf("0.8")) + mpf("1.2") * (1 + 1 / mpf("0.3")) * mpf("0.001")),
]

assert len(rows) == 25
print("#pragma once")
print()
print("// Generated by tests/oracles/tuning_reference.py (mpmath, 50 digits).")
print()
print("struct TuningReference {")
print("    const char* name;")
print("    const char* expr;")
print("    double value;")
print("};")
print()
print("inline constexpr TuningReference kTuningReference[] = {")
for name, expr, v in rows:
    print(f'    {{"{name}", "{expr}", {mp.nstr(v, 25, min_fixed=-1, max_fixed=-1)}}},')
print("};")
