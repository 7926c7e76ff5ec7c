#include <stdio.h>
#include <string.h>
#include <assert.h>
#include "fareytess.h"

int main(void) {
    int64_t tuple[3] = {1, 2, 3};
    char *p = ft_eval_p(tuple, 3);
    assert(p && strcmp(p, "2") == 0);
    ft_string_free(p);

    uint64_t chain[2] = {2, 3};
    bool admissible = false;
    assert(ft_chain_is_admissible(chain, 2, &admissible) == FtStatus_Ok);
    assert(admissible);

    FtTile *tile = NULL;
    uint64_t two[1] = {2};
    assert(ft_tile_new(two, 1, &tile) == FtStatus_Ok);
    assert(ft_tile_status(tile) == FtRegionStatus_NonemptyWithInterior);
    assert(ft_tile_vertex_count(tile) == 4);
    char *x = NULL, *y = NULL;
    assert(ft_tile_vertex(tile, 0, &x, &y) == FtStatus_Ok);
    printf("vertex0 = (%s, %s)\n", x, y);
    ft_string_free(x);
    ft_string_free(y);
    ft_tile_free(tile);

    uint64_t count; int64_t delta;
    assert(ft_count_chains(2, 9, &count, &delta) == FtStatus_Ok);
    printf("count = %llu, delta = %lld\n", (unsigned long long)count, (long long)delta);
    assert(count == 21 && delta == 3);
    puts("C ABI demo OK");
    return 0;
}
