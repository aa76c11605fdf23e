#include <stdio.h>
#include <string.h>
#include "planar_oracle.h"

int main(int argc, char **argv) {
    PoGraph *g = NULL;
    PoOracle *o = NULL;
    PoWeight w;
    if (argc < 2) return 10;
    if (po_graph_generate_grid(6, 6, 1, &g) != PO_STATUS_OK) return 11;
    if (po_oracle_build(g, 12, &o) != PO_STATUS_OK) return 12;
    if (po_oracle_query(o, 0, 0, &w) != PO_STATUS_OK || w.len != 0) return 13;
    if (po_oracle_query(o, 0, 1000000, &w) != PO_STATUS_OUT_OF_RANGE) return 14;
    if (po_last_error_message() == NULL) return 15;
    if (po_oracle_save(o, argv[1]) != PO_STATUS_OK) return 16;
    po_oracle_query(o, 3, (uint32_t)po_oracle_vertex_count(o) - 1, &w);
    printf("%llu %llu\n", (unsigned long long)w.len, (unsigned long long)w.tie);
    po_oracle_free(o);
    po_graph_free(g);
    return 0;
}
