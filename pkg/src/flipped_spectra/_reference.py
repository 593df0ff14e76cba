"""Published reference values used by the verification suites."""

import math

# Plateau-ramp symbol, n = 20: eigenvalues of T_n, of H_n, and the perfect grid.
TABLE1_LAMBDA_T = (
    1.00000000000000353822,
    1.00000000000071333310,
    1.00000000006613777056,
    1.00000000369131598005,
    1.00000013757194985002,
    1.00000359995028312744,
    1.00006712436027692073,
    1.00088357014017741679,
    1.00779697209247498221,
    1.04221339677660198160,
    1.13188837384995795521,
    1.26170015132705443149,
    1.40266551094883595348,
    1.54926998899631018209,
    1.69790994462440194399,
    1.84835063290469307888,
    1.99917620458656980870,
    2.15136121246339999889,
    2.30273860591566235042,
    2.45795620370766419040,
)
TABLE1_LAMBDA_H = (
    1.00000000000000353822,
    -1.00000000000071333310,
    1.00000000006613777056,
    -1.00000000369131598005,
    1.00000013757194985002,
    -1.00000359995028312744,
    1.00006712436027692073,
    -1.00088357014017741679,
    1.00779697209247498221,
    -1.04221339677660198160,
    1.13188837384995795521,
    -1.26170015132705443149,
    1.40266551094883595348,
    -1.54926998899631018209,
    1.69790994462440194399,
    -1.84835063290469307888,
    1.99917620458656980870,
    -2.15136121246339999889,
    2.30273860591566235042,
    -2.45795620370766419040,
)
TABLE1_XI = (
    1.57079632679490009622,
    1.57079632679560989110,
    1.57079632686103432856,
    1.57079633048621253805,
    1.57079646436684640802,
    1.57079992674517968544,
    1.57086345115517347873,
    1.57167989693507397479,
    1.57859329888737154021,
    1.61300972357149853960,
    1.70268470064485451321,
    1.83249647812195098949,
    1.97346183774373251148,
    2.12006631579120674009,
    2.26870627141929850199,
    2.41914695969958963688,
    2.56997253138146636670,
    2.72215753925829655689,
    2.87353493271055890842,
    3.02875253050256074839,
)

# cos(t) + cos(2t), n = 10.
TABLE2_PI = (6, 7, 5, 8, 9, 4, 10, 3, 2, 1)
TABLE2_PI_INV = (10, 9, 8, 6, 3, 1, 2, 4, 5, 7)
TABLE2_MISMATCHES = (5, 8)
TABLE2_SAMPLES = (1.8007, 1.2567, 0.5125, -0.2394, -0.8172, -1.1018, -1.0703, -0.7972, -0.4258, -0.1182)
TABLE2_EIGENVALUES = (-1.0, -1.0, -0.68860, -0.63858, -0.33095, -0.13695, 0.0, 0.65022, 1.32555, 1.81931)
TABLE3_PI = (6, 7, 8, 5, 9, 4, 10, 3, 2, 1)
TABLE3_PI_INV = (10, 9, 8, 6, 4, 1, 2, 3, 5, 7)
CROSSING_GAMMA = (103 - 13 * math.sqrt(41)) / 80
CROSSING_ABS_VALUE = (9 + math.sqrt(41)) / 20

# Grcar symbol, n = 10, homotopy from the (0,0) reference on the Gram matrix.
TABLE4_PI = (6, 5, 10, 7, 9, 8, 4, 3, 1, 2)
TABLE4_PI_INV = (9, 10, 8, 7, 2, 1, 4, 6, 5, 3)
TABLE4_ABS_F = (3.1128, 3.2412, 3.0420, 2.3741, 1.4028, 0.9106, 1.5209, 2.0037, 1.9431, 1.4191)
TABLE4_SIGMA = (3.0752, 3.1066, 2.6384, 1.9512, 1.2089, 1.0765, 1.4612, 1.8592, 1.8166, 1.2696)
TABLE4_LAMBDA_H = (-3.0752, 3.1066, 2.6384, -1.9512, 1.2089, -1.0765, 1.4612, -1.8592, 1.8166, -1.2696)
TABLE4_MISMATCHES = (1, 2)

# Signed singular values (-1)^(j+1) sigma in the order produced by each reference.
TABLE5_RAW = {
    (-1, -1): (3.0752, -3.1066, 2.6384, -1.9512, 1.2089, -1.2696, 1.8166, -1.8592, 1.4612, -1.0765),
    (-1, 0): (3.0752, -3.1066, 2.6384, -1.9512, 1.2696, -1.0765, 1.4612, -1.8592, 1.8166, -1.2089),
    (-1, 1): (2.6384, -3.1066, 3.0752, -1.9512, 1.2696, -1.0765, 1.4612, -1.8592, 1.8166, -1.2089),
    (0, -1): (3.0752, -3.1066, 2.6384, -1.9512, 1.2696, -1.0765, 1.4612, -1.8592, 1.8166, -1.2089),
    (0, 0): (3.0752, -3.1066, 2.6384, -1.9512, 1.2089, -1.0765, 1.4612, -1.8592, 1.8166, -1.2696),
    (0, 1): (2.6384, -3.1066, 3.0752, -1.9512, 1.4612, -1.0765, 1.2089, -1.8166, 1.8592, -1.2696),
    (1, -1): (2.6384, -3.1066, 3.0752, -1.9512, 1.2696, -1.0765, 1.4612, -1.8592, 1.8166, -1.2089),
    (1, 0): (2.6384, -3.1066, 3.0752, -1.9512, 1.4612, -1.0765, 1.2089, -1.8166, 1.8592, -1.2696),
    (1, 1): (2.6384, -3.0752, 3.1066, -1.9512, 1.8592, -1.0765, 1.2089, -1.4612, 1.8166, -1.2696),
}
_C1 = (3.1066, -3.0752, 2.6384, -1.9512, 1.2089, -1.2696, 1.8166, -1.8592, 1.4612, -1.0765)
_C2 = (3.1066, -3.0752, 2.6384, -1.9512, 1.2089, -1.0765, 1.4612, -1.8592, 1.8166, -1.2696)
_C3 = (2.6384, -3.0752, 3.1066, -1.9512, 1.2089, -1.0765, 1.4612, -1.8592, 1.8166, -1.2696)
_C4 = (2.6384, -3.0752, 3.1066, -1.9512, 1.4612, -1.0765, 1.2089, -1.8592, 1.8166, -1.2696)
# Orderings after swapping the rows whose signs disagree with lambda(H).
TABLE5_CORRECTED = {
    (-1, -1): _C1,
    (-1, 0): _C2, (0, -1): _C2, (0, 0): _C2,
    (-1, 1): _C3, (1, -1): _C3,
    (0, 1): _C4, (1, 0): _C4, (1, 1): _C4,
}
