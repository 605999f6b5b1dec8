constraints
1 entry_p1_in.st
1 entry_p1_out.st
2 entry_p2_fight.st
2 entry_p2_accept.st
