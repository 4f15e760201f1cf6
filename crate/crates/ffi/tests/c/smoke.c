#include <math.h>
#include <stdio.h>
#include "pspectral.h"

#define CHECK(cond)                                                   \
  do {                                                                \
    if (!(cond)) {                                                    \
      fprintf(stderr, "check failed at line %d: %s\n", __LINE__, #cond); \
      return 1;                                                       \
    }                                                                 \
  } while (0)

int main(void) {
  size_t vertices[] = {1, 2, 1, 3, 2, 3};
  double weights[] = {1.0, 1.0, 1.0};
  PsHypergraph *k3 = NULL;
  CHECK(ps_hypergraph_new(3, 2, 3, vertices, weights, &k3) == PS_STATUS_OK);
  CHECK(ps_hypergraph_edge_count(k3) == 3);

  double x[] = {1.0, 1.0, 1.0};
  double value = 0.0;
  CHECK(ps_evaluate(k3, x, 3, &value) == PS_STATUS_OK);
  CHECK(value == 6.0);

  PsSolverConfig cfg = ps_solver_config_default(2.0);
  cfg.seed = 3;
  PsEstimate *min = NULL;
  CHECK(ps_solve(k3, &cfg, PS_KIND_MIN, &min) == PS_STATUS_OK);
  CHECK(fabs(ps_estimate_value(min) + 1.0) < 1e-8);
  double witness[3];
  CHECK(ps_estimate_witness(min, witness, 3) == PS_STATUS_OK);
  ps_estimate_free(min);

  PsHypergraph *empty = NULL;
  CHECK(ps_hypergraph_new(3, 2, 0, NULL, NULL, &empty) == PS_STATUS_EMPTY_OR_ZERO_WEIGHT);
  char msg[128];
  CHECK(ps_last_error_message(msg, sizeof msg) > 0);

  ps_hypergraph_free(k3);
  printf("ok\n");
  return 0;
}
