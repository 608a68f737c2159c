#include <stdio.h>
#include "treelab.h"

int main(void) {
    TreelabTree *t = NULL, *star = NULL;
    char *leaves = NULL;
    if (treelab_tree_from_json("[[],[0],[0,2],[1]]", false, &t) != TREELAB_STATUS_OK) return 1;
    if (treelab_tree_leaves_json(t, &leaves) != TREELAB_STATUS_OK) return 1;
    printf("leaves %s\n", leaves);
    treelab_string_free(leaves);
    if (treelab_tree_transform(t, TREELAB_TRANSFORM_STAR, &star) != TREELAB_STATUS_OK) return 1;
    printf("star %zu\n", treelab_tree_len(star));
    TreelabTree *bad = NULL;
    if (treelab_tree_from_json("[[0,2]]", false, &bad) == TREELAB_STATUS_NOT_CLOSED) printf("not closed\n");
    treelab_tree_free(star);
    treelab_tree_free(t);
    return 0;
}
