#include <stdio.h>
#include <string.h>
#include "tilelab.h"

int main(void) {
    /* Three disjoint triangles. */
    uint32_t edges[18];
    for (uint32_t t = 0; t < 3; t++) {
        uint32_t b = 3 * t;
        uint32_t e[6] = {b, b + 1, b + 1, b + 2, b, b + 2};
        memcpy(edges + 6 * t, e, sizeof e);
    }
    TlGraph *g = NULL;
    TlPattern *h = NULL;
    char *json = NULL;
    size_t n = 0, m = 0;
    if (tl_graph_from_edges(9, edges, 9, &g) != TL_STATUS_OK) return 1;
    if (tl_pattern_from_spec("k3", &h) != TL_STATUS_OK) return 2;
    tl_graph_vertex_count(g, &n);
    tl_graph_edge_count(g, &m);
    if (tl_tile_json(g, h, 1000, 0, &json) != TL_STATUS_OK) return 3;
    printf("n=%zu m=%zu status=%s\n", n, m, strstr(json, "\"found\"") ? "found" : "other");
    if (tl_graph_from_edges(2, edges, 1, NULL) != TL_STATUS_NULL_POINTER) return 4;
    if (tl_last_error() == NULL) return 5;
    tl_string_free(json);
    tl_pattern_free(h);
    tl_graph_free(g);
    return 0;
}
