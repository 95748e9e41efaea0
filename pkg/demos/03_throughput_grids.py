"""Reproduce the reference throughput grids as CSV.

Lines of 3..6 servers, the first server's rate swept over three values,
everyone else at rate 1.0; once without interior buffers and once with
capacity-1 buffers everywhere. The same tables are available from the
command line:

    tandemqbd sweep --servers 3..6 --mu0 0.8,1.0,1.25 --mu-rest 1.0 --buffer 0

Run with: python demos/03_throughput_grids.py
"""

from tandemqbd import lambda_max, validate_config

MU0_VALUES = (0.8, 1.0, 1.25)

for capacity in (0, 1):
    print(f"# interior buffer capacity {capacity}")
    print("servers,buffer_capacity,mu0,mu_rest,M,lambda_max")
    for servers in range(3, 7):
        for mu0 in MU0_VALUES:
            config = validate_config(
                [mu0] + [1.0] * (servers - 1), [capacity] * (servers - 1)
            )
            report = lambda_max(config)
            print(
                f"{servers},{capacity},{mu0},1.0,"
                f"{report.num_phases},{report.lambda_max:.9f}"
            )
    print()
