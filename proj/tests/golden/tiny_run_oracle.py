#!/usr/bin/env python3
"""Hand evaluation of tiny_run.json, written without reference to the C++ code.

Audits are certain (frequency 1, p_audit 1, p_detection 1) and there are no
entrants, so the run is fully deterministic. Prints the expected
trajectory.csv; tiny_run_expected.csv is this script's output.

Step 0: T = (1, 1), K = 0, S = 0, V = (0, 0)
  player 0 cooperates, r = 0.5, s = 1; player 1 defects, r = 1, s = 0
  U0 = [1*1 + 1*0 + 0.1*1*0] + [1*0 - 0.5*1] - [2*0.25 + 1*(1-0)] = -1
  U1 = [1*1 + 0 + 0]          + [0 - 0.5*1]   - [2*1 + 1]           = -2.5
  T0' = 1 + 0.5*0.5*2*0.5*(1+0.2) = 1.3
  T1' = 1 + 0.5*1*1*0.8*(1+0)     = 1.4
  K'  = 0 + 0.1*(1*1 + 0*1)       = 0.1
  V'  = (1, 1),  S' = 1.3 + 1.4   = 2.7
  player 1 flagged -> warning from t = 1 (delay 1)
Step 1: T = (1.3, 1.4), K = 0.1, S = 2.7, V = (1, 1)
  U0 = [1.3 + 0.1 + 0.01] + [2.7 - 0.5*1.4] - [0.5 + 0] = 2.91
  U1 = [1.4 + 0.1 + 0]    + [2.7 - 0.5*1.3] - [2 + 0]   = 1.55
"""

P = dict(alpha=0.5, beta=0.1, gamma=0.2, lam=1.0, mu=1.0, phi=0.1, sigma=1.0,
         xi=0.5, eta=2.0, theta=1.0)
compute = [2.0, 1.0]
expertise = [0.5, 0.8]
choices = [("cooperate", 0.5, 1), ("defect", 1.0, 0)]


def utility(i, T, K, S, V):
    a, r, s = choices[i]
    econ = P["lam"] * T[i] + P["mu"] * K + P["phi"] * s * K
    sec = P["sigma"] * S - P["xi"] * sum(T[j] for j in range(len(T)) if j != i)
    cost = P["eta"] * r * r + P["theta"] * (1 - V[i])
    return econ + sec - cost


def main():
    T, K, S, V = [1.0, 1.0], 0.0, 0.0, [0, 0]
    sanction = ["none", "none"]
    rows = ["episode,t,player,action,r,s,T,K,S,V,sanction_level,stage_utility,audited,flagged"]
    for t in range(2):
        for i in range(2):
            a, r, s = choices[i]
            flagged = 1 if a == "defect" else 0
            rows.append(f"0,{t},{i},{a},{r!r},{s},{T[i]!r},{K!r},{S!r},{V[i]},"
                        f"{sanction[i]},{utility(i, T, K, S, V)!r},1,{flagged}")
        T_next = [T[i] + P["alpha"] * choices[i][1] * compute[i] * expertise[i]
                  * (1 + P["gamma"] * choices[i][2]) for i in range(2)]
        K = K + P["beta"] * sum(choices[i][2] * T[i] for i in range(2))
        V = [1, 1]
        T = T_next
        S = sum(V[i] * T[i] for i in range(2))
        sanction[1] = {"none": "warning", "warning": "revoked"}[sanction[1]]
    print("\n".join(rows))


if __name__ == "__main__":
    main()
