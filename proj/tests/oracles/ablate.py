import numpy as np, lightgbm as lgb
P=dict(num_iterations=4800,learning_rate=0.0035,num_leaves=11,max_depth=7,min_data_in_leaf=7,lambda_l2=0.0175,bagging_freq=5,bagging_fraction=0.66,feature_fraction=0.09,max_bin=64,min_data_in_bin=10,verbose=-1,objective='regression')
def cv(X,y,seed):
    rng=np.random.RandomState(seed); idx=rng.permutation(len(y)); fold=np.empty(len(y),int); fold[idx]=np.arange(len(y))%9
    rs=[]
    for f in range(9):
        tr=fold!=f; te=fold==f
        m=lgb.train(dict(P,seed=seed),lgb.Dataset(X[tr],y[tr]))
        rs.append(np.corrcoef(m.predict(X[te]),y[te])[0,1])
    return np.mean(rs)
for seed in range(5):
    r=np.random.RandomState(100+seed); n=270
    A=r.uniform(0,1,(n,2)); B=r.uniform(0,1,(n,2))
    y=A[:,0]+A[:,1]+r.normal(0,0.15,n)
    full=cv(np.hstack([A,B]),y,seed); noA=cv(B,y,seed); noB=cv(A,y,seed)
    print(seed, round(full,4), 'dA',round(noA-full,4),'dB',round(noB-full,4))
