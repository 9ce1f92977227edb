#pragma once

// Generated by tests/oracles/tuning_reference.py (mpmath, 50 digits).

struct TuningReference {
    const char* name;
    const char* expr;
    double value;
};

inline constexpr TuningReference kTuningReference[] = {
    {"r_binary_800_100", "r_for(lasso_ls, binary, n=800, M=100, delta=0.05)", 2.879939172986476058445602e-1},
    {"r_binary_log3", "r_for(lasso_ls, binary, n=6, M=1, delta=2/e^3)", 2.0},
    {"r_real_10000_50", "r_for(lasso_ls, real, n=10000, M=50, delta=0.05, L=1, sigma=1)", 1.151975669194590423378241e-1},
    {"r_real_bernstein_branch", "r_for(enet_ls, real, n=50, M=50, delta=0.05, L=1, sigma=0.1)", 1.32704794241632442734215},
    {"r_logistic_4000_200", "r_for(lasso_logistic, n=4000, M=200, delta=0.05, L=1)", 8.588762059101490141235601e-1},
    {"r_binary_selection", "r_for(lasso_ls, binary, n=800, M=20, delta=0.05, K=3)", 2.789843009263431114559452e-1},
    {"r_logistic_selection", "r_for(enet_logistic, n=2000, M=20, delta=0.05, L=1.2, K=2)", 1.470278803052890481218997},
    {"eps_small", "epsilon_tech(n=3, M=1, r=0.5)", 8.664339756999316367715402e-2},
    {"eps_cancel", "epsilon_tech(n=1, M=1, r=ln 2)", 2.5e-1},
    {"eps_50", "epsilon_tech(n=50, M=20, r=0.3)", 1.026063945748882650798753e-15},
    {"c_for", "c_for(r=0.3, B=1.5)", 1.0e-1},
    {"c_for_selection", "c_for_selection_logistic(r=0.3, B=1.5)", 4.0e-1},
    {"s_zero", "s_const(L=1, D=0)", 6.25e-2},
    {"s_one", "s_const(L=1, D=1)", 3.737934859750673416153696e-11},
    {"radius_lasso_ls", "ball_radius(lasso_ls, r=0.1, k=3, b=0.5)", 2.4},
    {"radius_enet_ls", "ball_radius(enet_ls, r=0.2, c=0.1, k=3, b=0.6)", 3.642857142857142857142857},
    {"radius_lasso_logistic", "ball_radius(lasso_logistic, r=0.3, k=2, b=0.7, s=0.01, eps=0.001)", 3.428614761904761904761905e+2},
    {"radius_enet_logistic", "ball_radius(enet_logistic, r=0.3, c=0.05, k=2, b=0.7, s=0.01, eps=0.001)", 4.474117543859649122807018e+1},
    {"weak_lasso_logistic", "signal_threshold(lasso_logistic, weak, r=0.2, eps=0.01)", 8.8e-1},
    {"weak_enet_logistic", "signal_threshold(enet_logistic, weak, r=0.2, eps=0.01)", 7.6e-1},
    {"d_lasso_ls", "d_limit(lasso_ls)", 6.666666666666666666666667e-2},
    {"d_enet_ls", "d_limit(enet_ls, c=0.75)", 1.0e-1},
    {"d_lasso_logistic", "d_limit(lasso_logistic, s=0.3, eps=0.01)", 1.484707512620013857270118e-2},
    {"d_enet_logistic", "d_limit(enet_logistic, s=0.3, c=0.2, eps=0.01)", 2.292946895349903696230395e-2},
    {"lidentif_radius", "lidentif_radius(L=1.2, r=0.3, k=2, s=0.5, b=0.8, eps=0.001)", 7.2052},
};
