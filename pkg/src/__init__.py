# Frobenius and Tor computations over graded quotients of F_p[x]
