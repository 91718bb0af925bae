from mpmath import mp, mpf, log, sqrt
mp.dps=40
def m(o11,o12,o21,o22):
    o11,o12,o21,o22=map(mpf,(o11,o12,o21,o22))
    n=o11+o12+o21+o22; r1=o11+o12; r2=o21+o22; c1=o11+o21; c2=o12+o22
    E=r1*c1/n
    out={}
    out['pmi']= log(o11/E,2) if o11>0 else None
    out['t']=(o11-E)/sqrt(o11) if o11>0 else None
    out['z']=(o11-E)/sqrt(E) if E>0 else None
    g=0
    for o,r,c in ((o11,r1,c1),(o12,r1,c2),(o21,r2,c1),(o22,r2,c2)):
        if o>0: g+=o*log(o/(r*c/n))
    out['g2']=2*g
    out['sll']=2*(o11*log(o11/E)-(o11-E)) if o11>0 else None
    out['dice']=2*o11/(r1+c1)
    out['dp21']=o11/r1-o21/r2
    out['dp12']=o11/c1-o12/c2
    return {k:(None if v is None else float(v)) for k,v in out.items()}
for t in [(2,2,2,2),(2,2,1,15),(0,4,3,13)]:
    print(t, {k:(None if v is None else f"{v:.12f}") for k,v in m(*t).items()})
