"""Reference constants pinned by the brute-force oracles.

Each entry stores the value together with the ``mlbeta oracle`` arguments
that regenerate it; every value was also cross-checked against mpmath at 40
digits (agreement within 2.3e-16).
"""

REFERENCE = {
    "wright_example": {
        "value": 1.2741125497558559 + 0.06259044225973966j,
        "argv": ["--kind", "Wright", "--upper", "1.3:1,0.7:1,1:1", "--lower", "0.8:0.5,1.7:1.2,2.0:2",
                 "--x", "1.5+0.5i", "--cap", "500"],
    },
    "wright_two_factor_q08": {
        "value": 1.2806496224344803 + 0j,
        "argv": ["--kind", "Wright", "--upper", "0.6:1,1.5:1,1:1", "--lower", "0.8:0.5,1.7:1.2,2.1:2",
                 "--x", "0.8", "--cap", "200"],
    },
    "ml_example": {
        "value": 3.9022384953075666 + 0j,
        "argv": ["--kind", "ML", "--eps", "0.5,1.2", "--omega", "0.8,1.7", "--z", "2.5", "--cap", "300"],
    },
    "ml_classical_07": {
        "value": 0.3457578908198115 + 0j,
        "argv": ["--kind", "ML", "--eps", "0.7", "--omega", "1", "--z=-1.2", "--cap", "300"],
    },
    "wiman_05_15": {
        "value": 53.97045219498899 + 0j,
        "argv": ["--kind", "ML", "--eps", "0.5", "--omega", "1.5", "--z", "2", "--cap", "300"],
    },
    # one-variable F_D is the Gauss series: (a, c, b, x)
    "gauss_2f1": {
        "value": 0.8937843212146803,
        "argv": ["--kind", "FD", "--params=0.3,2.2,1.7,-0.6", "--cap", "200"],
    },
    # Phi2 with y = 0 is the Kummer series
    "kummer_1f1": {
        "value": 0.6926056966835459,
        "argv": ["--kind", "Phi2", "--params=0.8,1,2.5,-1.3,0", "--cap", "60"],
    },
    "appell_f1": {
        "value": 0.9327182834290518,
        "argv": ["--kind", "F1", "--params=1.2,0.5,0.9,2.7,0.3,-0.4", "--cap", "120"],
    },
    "appell_f3": {
        "value": 1.2177571966217642,
        "argv": ["--kind", "F3", "--params=1.1,0.6,0.8,1.4,2.9,0.25,0.35", "--cap", "120"],
    },
    "lauricella_fd3": {
        "value": 1.0546900727749065,
        "argv": ["--kind", "FD", "--params=0.9,3.1,0.4,0.7,1.1,0.2,-0.3,0.25", "--cap", "80"],
    },
    "humbert_phi2": {
        "value": 1.3185551809553095,
        "argv": ["--kind", "Phi2", "--params=0.7,0.7,1.9,1.2,-0.8", "--cap", "60"],
    },
}
