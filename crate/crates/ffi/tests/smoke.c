#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "securewsn.h"

#define CHECK(cond)                                                      \
    do {                                                                 \
        if (!(cond)) {                                                   \
            const char *e = swsn_last_error();                           \
            fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__, #cond, \
                    e ? e : "no error");                                 \
            return 1;                                                    \
        }                                                                \
    } while (0)

int main(int argc, char **argv) {
    double r = 0.0;
    int32_t branch = 7;
    CHECK(swsn_critical_range(2000, 40, 10000, SWSN_REGION_TORUS, &r, &branch) == SWSN_STATUS_OK);
    CHECK(fabs(r - 0.08695261634920292) < 1e-14);
    CHECK(branch == SWSN_BRANCH_NONE);
    CHECK(swsn_critical_range(2000, 40, 10000, SWSN_REGION_SQUARE, &r, &branch) == SWSN_STATUS_OK);
    CHECK(branch == SWSN_BRANCH_DENSE);

    CHECK(swsn_key_share_probability(0, 10, &r) == SWSN_STATUS_DOMAIN);
    CHECK(strstr(swsn_last_error(), "ring size") != NULL);

    SwsnParams *params = NULL;
    CHECK(swsn_params_new(300, 5, 100, 0.15, SWSN_REGION_SQUARE, &params) == SWSN_STATUS_OK);
    double iso = 0.0;
    CHECK(swsn_isolated_probability(params, &iso) == SWSN_STATUS_OK);
    CHECK(iso > 0.0 && iso < 1.0);

    SwsnNetwork *net = NULL;
    CHECK(swsn_network_sample(params, 42, &net) == SWSN_STATUS_OK);
    SwsnGraphStats stats;
    CHECK(swsn_network_stats(net, &stats) == SWSN_STATUS_OK);
    CHECK(stats.node_count == 300);
    size_t len = 0;
    CHECK(swsn_network_edges(net, NULL, 0, &len) ==
          (stats.edge_count ? SWSN_STATUS_BUFFER_TOO_SMALL : SWSN_STATUS_OK));
    CHECK(len == 2 * stats.edge_count);
    uint32_t *edges = malloc((len ? len : 1) * sizeof *edges);
    CHECK(swsn_network_edges(net, edges, len, &len) == SWSN_STATUS_OK);
    for (size_t i = 0; i < len; i += 2) CHECK(edges[i] < edges[i + 1] && edges[i + 1] < 300);
    free(edges);
    swsn_network_free(net);
    swsn_params_free(params);

    SwsnSweepConfig config = {
        .n = 200, .ring_size = 5, .pool_size = 100, .region = SWSN_REGION_TORUS,
        .r_min = 0.05, .r_max = 0.3, .r_steps = 4, .trials = 10, .seed = 3,
        .coupled = true, .edge_probability = -1.0,
    };
    SwsnSweep *sweep = NULL;
    CHECK(swsn_sweep_run(&config, &sweep) == SWSN_STATUS_OK);
    CHECK(swsn_sweep_len(sweep) == 4);
    SwsnSweepRow prev = {0}, row;
    for (size_t i = 0; i < 4; i++) {
        CHECK(swsn_sweep_row(sweep, i, &row) == SWSN_STATUS_OK);
        CHECK(row.connected_count >= prev.connected_count);
        prev = row;
    }
    CHECK(swsn_sweep_row(sweep, 4, &row) == SWSN_STATUS_DOMAIN);
    if (argc > 1) CHECK(swsn_sweep_write_csv(sweep, argv[1]) == SWSN_STATUS_OK);
    CHECK(swsn_sweep_write_csv(sweep, "/nonexistent-dir/x.csv") == SWSN_STATUS_IO);
    swsn_sweep_free(sweep);

    char *text = NULL;
    CHECK(swsn_report(2000, 40, 10000, SWSN_REGION_TORUS, NAN, &text) == SWSN_STATUS_OK);
    CHECK(strstr(text, "alpha             0.000000000") != NULL);
    swsn_string_free(text);

    puts("ok");
    return 0;
}
